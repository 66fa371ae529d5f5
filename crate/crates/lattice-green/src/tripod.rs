//! Determinantal statistics of the uniform spanning tree conditioned on a
//! triple point at the origin: limiting kernels built from the full-plane
//! potential kernel, and the exact edge and degree statistics they give.
//!
//! The tripod vertex sits at the doubled origin with white neighbors
//! `w1..w4 = E,N,W,S` and black neighbors `b1..b4` at distance two. The
//! contracted tr-kernel replaces `w1..w4` and the tripod vertex by a single
//! white vertex `w0` carrying twelve signed edges.
//!
//! Sign convention: this module's Kasteleyn weights are the negated base
//! scheme (east -1, west 1, north -i, south i). That leaves every probability
//! and the identity `K K^-1 = I` unchanged while matching the tabulated
//! kernel entries, whose signs pair with unit edge weights.

use crate::exact::{ComplexElem, ExactError, ExactResult, RingElem};
use crate::kasteleyn::{is_black, is_white, DoubledPoint};
use crate::plane::potential;

/// Tripod-module Kasteleyn weight (no zipper; negated base scheme).
pub fn k_weight_plane(w: DoubledPoint, b: DoubledPoint) -> ExactResult<ComplexElem> {
    if !is_white(w) || !is_black(b) || (w.0 - b.0).abs() + (w.1 - b.1).abs() != 1 {
        return Err(ExactError::Parse(format!("({w:?},{b:?}) is not a white-black edge")));
    }
    Ok(match (b.0 - w.0, b.1 - w.1) {
        (1, 0) => ComplexElem::from_int(2, -1, 0),
        (-1, 0) => ComplexElem::from_int(2, 1, 0),
        (0, 1) => ComplexElem::from_int(2, 0, -1),
        (0, -1) => ComplexElem::from_int(2, 0, 1),
        _ => unreachable!(),
    })
}

/// Full-plane inverse-Kasteleyn entry: sum over the two same-sublattice
/// neighbors `b'` of `w` of `conj(weight) * A((b' - b)/2)` with the potential
/// kernel `A` of `Z^2`. Values lie in `Q + Q/pi`, times `i` for one parity.
pub fn k_inverse_plane(b: DoubledPoint, w: DoubledPoint) -> ExactResult<ComplexElem> {
    if !is_black(b) || !is_white(w) {
        return Err(ExactError::Parse(format!("need black {b:?} and white {w:?}")));
    }
    let even_even = b.0.rem_euclid(2) == 0;
    let mut acc = ComplexElem::zero(2);
    for bp in [(w.0 + 1, w.1), (w.0 - 1, w.1), (w.0, w.1 + 1), (w.0, w.1 - 1)] {
        if (bp.0.rem_euclid(2) == 0) != even_even || (bp.1.rem_euclid(2) == 0) != even_even {
            continue;
        }
        // conj of the un-negated base weight pairs with the potential kernel;
        // together with the negated K factor this keeps K K^-1 = I.
        let weight = k_weight_plane(w, bp)?.conj().neg();
        let a = potential(((bp.0 - b.0) / 2, (bp.1 - b.1) / 2));
        acc = acc.add(&weight.mul(&ComplexElem::real(a))?)?;
    }
    Ok(acc)
}

pub const W1: DoubledPoint = (1, 0);
pub const W2: DoubledPoint = (0, 1);
pub const W3: DoubledPoint = (-1, 0);
pub const W4: DoubledPoint = (0, -1);

fn is_horizontal_white(w: DoubledPoint) -> bool {
    w.0.rem_euclid(2) == 1
}

/// Limiting kernel conditioned on the two tripod legs through `w1` (east) and
/// `w2` (north): `K^-1(b,w) - K^-1(b,w1)` for horizontal `w`, `- K^-1(b,w2)`
/// for vertical `w`.
pub fn k_inverse_ne(b: DoubledPoint, w: DoubledPoint) -> ExactResult<ComplexElem> {
    if w == W1 || w == W2 {
        return Err(ExactError::Parse(format!("white {w:?} is removed in this kernel")));
    }
    let base = k_inverse_plane(b, w)?;
    let sub = if is_horizontal_white(w) {
        k_inverse_plane(b, W1)?
    } else {
        k_inverse_plane(b, W2)?
    };
    base.sub(&sub)
}

/// Directional variants for the other corners (used by the averaging check).
pub fn k_inverse_corner(
    b: DoubledPoint,
    w: DoubledPoint,
    horizontal_ref: DoubledPoint,
    vertical_ref: DoubledPoint,
) -> ExactResult<ComplexElem> {
    if w == horizontal_ref || w == vertical_ref {
        return Err(ExactError::Parse(format!("white {w:?} is removed in this kernel")));
    }
    let base = k_inverse_plane(b, w)?;
    let sub = if is_horizontal_white(w) {
        k_inverse_plane(b, horizontal_ref)?
    } else {
        k_inverse_plane(b, vertical_ref)?
    };
    base.sub(&sub)
}

/// The white argument of the tr-kernel: an ordinary white vertex or the
/// contracted vertex `w0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrWhite {
    At(DoubledPoint),
    W0,
}

/// Limiting tripod kernel: the average of the four corner kernels for
/// ordinary whites, and `(K^-1(b,w1) - K^-1(b,w3))/2` for the `w0` column.
pub fn k_inverse_tr(b: DoubledPoint, w: TrWhite) -> ExactResult<ComplexElem> {
    let half = crate::exact::rat(1, 2);
    match w {
        TrWhite::W0 => {
            let d = k_inverse_plane(b, W1)?.sub(&k_inverse_plane(b, W3)?)?;
            Ok(ComplexElem::new(d.re.scale(&half), d.im.scale(&half)))
        }
        TrWhite::At(w) => {
            if [W1, W2, W3, W4].contains(&w) {
                return Err(ExactError::Parse(format!("white {w:?} was contracted into w0")));
            }
            let base = k_inverse_plane(b, w)?;
            let (ra, rb) = if is_horizontal_white(w) { (W1, W3) } else { (W2, W4) };
            let sum = k_inverse_plane(b, ra)?.add(&k_inverse_plane(b, rb)?)?;
            base.sub(&ComplexElem::new(sum.re.scale(&half), sum.im.scale(&half)))
        }
    }
}

/// The twelve signed edges of the contracted vertex `w0` (negated scheme):
/// (black endpoint, weight, multiplicity).
pub fn w0_edges() -> Vec<(DoubledPoint, ComplexElem, u32)> {
    let i = |re: i64, im: i64| ComplexElem::from_int(2, re, im);
    vec![
        ((2, 0), i(-1, 0), 1),
        ((-2, 0), i(-1, 0), 1),
        ((0, 2), i(1, 0), 1),
        ((0, -2), i(1, 0), 1),
        ((1, 1), i(0, -1), 2),
        ((-1, -1), i(0, -1), 2),
        ((-1, 1), i(0, 1), 2),
        ((1, -1), i(0, 1), 2),
    ]
}

/// Directed-edge probability for the tripod-conditioned tree: the directed
/// tree edge from `t` in direction `d` is the dimer pairing black `2t` with
/// the white edge-vertex `2t + d`.
pub fn tripod_directed_edge_probability(t: (i64, i64), d: crate::trunk::Dir) -> ExactResult<RingElem> {
    let b = (2 * t.0, 2 * t.1);
    if b == (0, 0) {
        return Err(ExactError::Parse("the tripod vertex has no outgoing dimer".into()));
    }
    let o = d.offset();
    let w = (b.0 + o.0, b.1 + o.1);
    let (kw, kinv) = if [W1, W2, W3, W4].contains(&w) {
        // The edge lands in the contracted vertex: read the matching stub of w0.
        let stub = w0_edges()
            .into_iter()
            .find(|(bb, _, _)| *bb == b)
            .expect("stub edge present");
        (stub.1, k_inverse_tr(b, TrWhite::W0)?)
    } else {
        (k_weight_plane(w, b)?, k_inverse_tr(b, TrWhite::At(w))?)
    };
    let p = kw.mul(&kinv)?;
    if !p.im.is_zero() {
        return Err(ExactError::Parse(format!("non-real probability {p}")));
    }
    let v = p.re.to_f64();
    if !(-1e-12..=1.0 + 1e-12).contains(&v) {
        return Err(ExactError::Parse(format!("probability {v} outside [0,1]")));
    }
    Ok(p.re)
}

/// Exact headline statistics of the tripod point.
pub struct TripodStatistics {
    /// Probability of a given directed edge into the tripod vertex.
    pub edge_probability: RingElem,
    /// Probability that the tripod vertex has degree 4.
    pub degree4: RingElem,
    /// Probability that the tripod vertex has degree 3.
    pub degree3: RingElem,
    /// Expected degree of the tripod vertex.
    pub expected_degree: RingElem,
}

pub fn tripod_statistics() -> ExactResult<TripodStatistics> {
    let edge = tripod_directed_edge_probability((-1, 0), crate::trunk::Dir::E)?;
    let degree4 = edge.scale(&crate::exact::rat_i(4));
    let degree3 = RingElem::one(2).sub(&degree4)?;
    let expected = RingElem::from_int(2, 3).add(&degree4)?;
    Ok(TripodStatistics { edge_probability: edge, degree4, degree3, expected_degree: expected })
}

/// Directed-edge table over a window of tree coordinates.
pub fn tripod_table(
    x0: i64,
    x1: i64,
    y0: i64,
    y1: i64,
) -> ExactResult<Vec<((i64, i64), crate::trunk::Dir, RingElem)>> {
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            if (x, y) == (0, 0) {
                continue;
            }
            for d in crate::trunk::Dir::ALL {
                out.push(((x, y), d, tripod_directed_edge_probability((x, y), d)?));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_expr;
    use crate::trunk::Dir;

    fn e2(s: &str) -> RingElem {
        parse_expr(s, 2).unwrap()
    }

    fn c2(re: &str, im: &str) -> ComplexElem {
        ComplexElem::new(e2(re), e2(im))
    }

    #[test]
    fn plane_kernel_worked_entries() {
        assert_eq!(k_inverse_plane((-2, 0), (-1, 0)).unwrap(), c2("1/4", "0"));
        assert_eq!(k_inverse_plane((-2, 0), (1, 0)).unwrap(), c2("1 - 2/pi - 1/4", "0"));
    }

    #[test]
    fn plane_kernel_identity() {
        // Row sums: for whites w, w' in a window,
        // sum over b ~ w of K(w,b) K^-1(b,w') = delta.
        let whites: Vec<DoubledPoint> = (-3..=3)
            .flat_map(|x| (-3..=3).map(move |y| (x, y)))
            .filter(|&p| is_white(p))
            .collect();
        for &w in &whites {
            for &wp in &whites {
                let mut acc = ComplexElem::zero(2);
                for b in [(w.0 + 1, w.1), (w.0 - 1, w.1), (w.0, w.1 + 1), (w.0, w.1 - 1)] {
                    let t = k_weight_plane(w, b)
                        .unwrap()
                        .mul(&k_inverse_plane(b, wp).unwrap())
                        .unwrap();
                    acc = acc.add(&t).unwrap();
                }
                let expect = if w == wp {
                    ComplexElem::from_int(2, 1, 0)
                } else {
                    ComplexElem::zero(2)
                };
                assert_eq!(acc, expect, "w={w:?} w'={wp:?}");
            }
        }
    }

    #[test]
    fn ne_kernel_edge_value() {
        // NE-conditioned west-leg probability: 2/pi - 1/2.
        let b = (-2, 0);
        let w = (-1, 0);
        let kinv = k_inverse_ne(b, w).unwrap();
        let p = k_weight_plane(w, b).unwrap().mul(&kinv).unwrap();
        assert_eq!(p, c2("2/pi - 1/2", "0"));
        assert!(k_inverse_ne(b, W1).is_err());
    }

    #[test]
    fn ne_conditioning_decays() {
        // Far from the origin the NE kernel approaches the plane kernel; the
        // correction is a potential-kernel gradient, decaying like 1/(2 pi d).
        let b = (401, 1);
        let w = (401, 0);
        let a = k_inverse_ne(b, w).unwrap();
        let c = k_inverse_plane(b, w).unwrap();
        let d = a.sub(&c).unwrap();
        assert!(d.re.to_f64().abs() + d.im.to_f64().abs() < 1e-3);
    }

    #[test]
    fn tr_kernel_is_average_of_corners() {
        let corners = [(W1, W2), (W2, W3), (W3, W4), (W4, W1)];
        for b in [(2, 0), (1, 1), (-1, 3), (2, -2)] {
            for w in [(3, 0), (2, 1), (-1, 2), (1, -2)] {
                if [W1, W2, W3, W4].contains(&w) {
                    continue;
                }
                let mut acc = ComplexElem::zero(2);
                for (h, v) in corners {
                    let (h, v) = if is_horizontal_white(h) { (h, v) } else { (v, h) };
                    acc = acc.add(&k_inverse_corner(b, w, h, v).unwrap()).unwrap();
                }
                let quarter = crate::exact::rat(1, 4);
                let avg = ComplexElem::new(acc.re.scale(&quarter), acc.im.scale(&quarter));
                assert_eq!(avg, k_inverse_tr(b, TrWhite::At(w)).unwrap(), "b={b:?} w={w:?}");
            }
        }
    }

    #[test]
    fn w0_column_matches_identity_route() {
        // K^-1_tr(b, w0) = (K^-1(b,w1) - K^-1(b,w3))/2, checked against the
        // route through b1's other white neighbors (the relation that defined it).
        let b1 = (2, 0);
        let (we, wn, ws) = ((3, 0), (2, 1), (2, -1));
        for b in [(2, 0), (0, 2), (1, 1), (-2, 0), (3, 1)] {
            let lhs = k_inverse_tr(b, TrWhite::W0).unwrap();
            let mut rhs = k_inverse_tr(b, TrWhite::At(we)).unwrap();
            rhs = rhs
                .add(&k_inverse_tr(b, TrWhite::At(wn)).unwrap().scale_i())
                .unwrap();
            rhs = rhs
                .sub(&k_inverse_tr(b, TrWhite::At(ws)).unwrap().scale_i())
                .unwrap();
            if b == b1 {
                rhs = rhs.sub(&ComplexElem::from_int(2, 1, 0)).unwrap();
            }
            assert_eq!(lhs, rhs, "b={b:?}");
        }
    }

    #[test]
    fn headline_statistics() {
        let s = tripod_statistics().unwrap();
        assert_eq!(s.edge_probability, e2("1/pi - 1/4"));
        assert_eq!(s.degree4, e2("4/pi - 1"));
        assert_eq!(s.degree3, e2("2 - 4/pi"));
        assert_eq!(s.expected_degree, e2("2 + 4/pi"));
    }

    #[test]
    fn four_legs_equal_by_symmetry() {
        let legs = [
            tripod_directed_edge_probability((-1, 0), Dir::E).unwrap(),
            tripod_directed_edge_probability((1, 0), Dir::W).unwrap(),
            tripod_directed_edge_probability((0, 1), Dir::S).unwrap(),
            tripod_directed_edge_probability((0, -1), Dir::N).unwrap(),
        ];
        for leg in &legs[1..] {
            assert_eq!(leg, &legs[0]);
        }
    }

    #[test]
    fn directed_probabilities_in_range() {
        for (t, d, p) in tripod_table(-2, 2, -2, 2).unwrap() {
            let v = p.to_f64();
            assert!((-1e-12..=1.0).contains(&v), "({t:?},{d:?}) -> {v}");
        }
    }
}
