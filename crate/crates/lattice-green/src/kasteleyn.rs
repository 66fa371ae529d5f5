//! Kasteleyn weighting of the doubled lattice with a hole at the origin and a
//! zipper to the boundary, inverse-Kasteleyn entries assembled from the
//! branched-cover Green's functions, and determinantal event probabilities.
//!
//! Doubled coordinates: black vertices have even coordinate sum, whites odd.
//! The even-even blacks form one original sublattice, the odd-odd blacks its
//! dual. Base weights from each white vertex: east 1, west -1, north i,
//! south -i; edges crossed by the zipper (the dual path just below the
//! negative diagonal) carry the opposite sign.

use crate::branched::{g_sigma_a, g_xi_a, Branch};
use crate::exact::{ComplexElem, ExactError, ExactResult, RingElem};

/// Point of the doubled lattice.
pub type DoubledPoint = (i64, i64);

pub fn is_black(p: DoubledPoint) -> bool {
    (p.0 + p.1).rem_euclid(2) == 0
}

pub fn is_white(p: DoubledPoint) -> bool {
    !is_black(p)
}

fn adjacent(a: DoubledPoint, b: DoubledPoint) -> bool {
    (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1
}

/// Is the doubled-lattice edge {a, b} crossed by the zipper? The crossed set
/// is `{(k,k),(k+1,k)}` and `{(k,k),(k,k-1)}` for `k <= -1`, matching the
/// canonical zipper of the Green's-function side.
fn zipper_crossed(a: DoubledPoint, b: DoubledPoint) -> bool {
    crate::branched::zipper_sign(a, b) < 0
}

/// Kasteleyn weight K(w, b) including the zipper sign.
pub fn k_weight(w: DoubledPoint, b: DoubledPoint) -> ExactResult<ComplexElem> {
    if !is_white(w) || !is_black(b) || !adjacent(w, b) {
        return Err(ExactError::Parse(format!("({w:?},{b:?}) is not a white-black edge")));
    }
    let base = match (b.0 - w.0, b.1 - w.1) {
        (1, 0) => ComplexElem::from_int(2, 1, 0),
        (-1, 0) => ComplexElem::from_int(2, -1, 0),
        (0, 1) => ComplexElem::from_int(2, 0, 1),
        (0, -1) => ComplexElem::from_int(2, 0, -1),
        _ => unreachable!(),
    };
    Ok(if zipper_crossed(w, b) { base.neg() } else { base })
}

/// Inverse-Kasteleyn entry for the hole-at-origin kernel:
/// sum over the two same-sublattice neighbors `b'` of `w` of
/// `conj(K(w,b')) * G^A(b'/2, b/2)`, where `G^A` is the vertex-branched
/// antisymmetric Green's function on the even-even sublattice and the
/// face-branched one on the odd-odd sublattice (principal branches).
pub fn k_inverse_trunk(b: DoubledPoint, w: DoubledPoint) -> ExactResult<ComplexElem> {
    if !is_black(b) || !is_white(w) {
        return Err(ExactError::Parse(format!("need black {b:?} and white {w:?}")));
    }
    let even_even = b.0.rem_euclid(2) == 0;
    // Neighbors of w on b's sublattice: horizontal pair for one parity of w,
    // vertical pair for the other.
    let candidates = [(w.0 + 1, w.1), (w.0 - 1, w.1), (w.0, w.1 + 1), (w.0, w.1 - 1)];
    let mut acc = ComplexElem::zero(2);
    for bp in candidates {
        if (bp.0.rem_euclid(2) == 0) != even_even || (bp.1.rem_euclid(2) == 0) != even_even {
            continue;
        }
        let weight = k_weight(w, bp)?.conj();
        let green = if even_even {
            g_sigma_a((bp.0 / 2, bp.1 / 2), (b.0 / 2, b.1 / 2), Branch::Principal, Branch::Principal)?
        } else {
            g_xi_a(bp, b, Branch::Principal, Branch::Principal)?
        };
        acc = acc.add(&weight.mul(&ComplexElem::real(green))?)?;
    }
    Ok(acc)
}

/// A finite set of dimers: (black, white) pairs with distinct vertices.
#[derive(Debug, Clone)]
pub struct EventSpec {
    pub dimers: Vec<(DoubledPoint, DoubledPoint)>,
}

impl EventSpec {
    pub fn new(dimers: Vec<(DoubledPoint, DoubledPoint)>) -> ExactResult<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(b, w) in &dimers {
            if !is_black(b) || !is_white(w) || !adjacent(b, w) {
                return Err(ExactError::Parse(format!("({b:?},{w:?}) is not a black-white edge")));
            }
            if !seen.insert(b) || !seen.insert(w) {
                return Err(ExactError::Parse("event vertices must be distinct".into()));
            }
        }
        Ok(EventSpec { dimers })
    }
}

/// An inverse-kernel handle: different conditioned models share the same
/// determinantal evaluation.
pub trait Kernel {
    fn entry(&self, b: DoubledPoint, w: DoubledPoint) -> ExactResult<ComplexElem>;
    fn weight(&self, w: DoubledPoint, b: DoubledPoint) -> ExactResult<ComplexElem>;
}

/// The hole-at-origin kernel shared by the trunk and monomer statistics.
pub struct TrunkKernel;

impl Kernel for TrunkKernel {
    fn entry(&self, b: DoubledPoint, w: DoubledPoint) -> ExactResult<ComplexElem> {
        k_inverse_trunk(b, w)
    }
    fn weight(&self, w: DoubledPoint, b: DoubledPoint) -> ExactResult<ComplexElem> {
        k_weight(w, b)
    }
}

/// Probability of the dimer event: `det [K^-1(b_i, w_j)] * prod_i K(w_i, b_i)`.
/// The result must be exactly real and numerically in [0, 1].
pub fn event_probability(kernel: &dyn Kernel, event: &EventSpec) -> ExactResult<RingElem> {
    let n = event.dimers.len();
    let mut m = Vec::with_capacity(n * n);
    for &(b, _) in &event.dimers {
        for &(_, w) in &event.dimers {
            m.push(kernel.entry(b, w)?);
        }
    }
    let mut det = det_complex(&m, n)?;
    for &(b, w) in &event.dimers {
        det = det.mul(&kernel.weight(w, b)?)?;
    }
    if !det.im.is_zero() {
        return Err(ExactError::Parse(format!(
            "event probability has a nonzero imaginary part: {det}"
        )));
    }
    let p = det.re;
    let pf = p.to_f64();
    if !(-1e-12..=1.0 + 1e-12).contains(&pf) {
        return Err(ExactError::Parse(format!("probability {pf} outside [0,1]")));
    }
    Ok(p)
}

/// Exact determinant of an n x n complex matrix (row-major) by Gaussian
/// elimination; entries here are pi-free, so division is always available.
pub fn det_complex(m: &[ComplexElem], n: usize) -> ExactResult<ComplexElem> {
    if n == 0 {
        return Ok(ComplexElem::from_int(2, 1, 0));
    }
    let mut a: Vec<Vec<ComplexElem>> = (0..n)
        .map(|r| m[r * n..(r + 1) * n].to_vec())
        .collect();
    let mut det = ComplexElem::from_int(2, 1, 0);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(ComplexElem::zero(2));
        };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        let piv = a[col][col].clone();
        det = det.mul(&piv)?;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].div(&piv)?;
            for c in col..n {
                let t = f.mul(&a[col][c])?;
                a[r][c] = a[r][c].sub(&t)?;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_expr;

    fn e2(s: &str) -> RingElem {
        parse_expr(s, 2).unwrap()
    }

    fn c2(re: &str, im: &str) -> ComplexElem {
        ComplexElem::new(e2(re), e2(im))
    }

    #[test]
    fn base_weights() {
        assert_eq!(k_weight((1, 0), (2, 0)).unwrap(), c2("1", "0"));
        assert_eq!(k_weight((1, 0), (1, 1)).unwrap(), c2("0", "1"));
        assert_eq!(k_weight((1, 0), (0, 0)).unwrap(), c2("-1", "0"));
        assert_eq!(k_weight((1, 0), (1, -1)).unwrap(), c2("0", "-1"));
        assert!(k_weight((1, 0), (3, 0)).is_err());
    }

    #[test]
    fn zipper_flipped_weights() {
        // West edge {(-1,-1),(0,-1)} of white (0,-1): flipped to +1.
        assert_eq!(k_weight((0, -1), (-1, -1)).unwrap(), c2("1", "0"));
        // North edge {(-1,-2),(-1,-1)} of white (-1,-2): flipped to -i.
        assert_eq!(k_weight((-1, -2), (-1, -1)).unwrap(), c2("0", "-1"));
        // Un-crossed analogues on the other side keep base signs.
        assert_eq!(k_weight((0, 1), (-1, 1)).unwrap(), c2("-1", "0"));
    }

    #[test]
    fn kasteleyn_flatness() {
        // For every unit square face with corners (x,y)..(x+1,y+1), the
        // alternating product condition holds: K(w1,b1) K(w2,b2) =
        // -K(w1,b2) K(w2,b1) for the two whites and two blacks of the face.
        for x in -5..=5i64 {
            for y in -5..=5i64 {
                let pts = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)];
                if pts.contains(&(0, 0)) {
                    continue; // hole
                }
                let whites: Vec<_> = pts.iter().copied().filter(|&p| is_white(p)).collect();
                let blacks: Vec<_> = pts.iter().copied().filter(|&p| is_black(p)).collect();
                let k = |w, b| k_weight(w, b).unwrap();
                let lhs = k(whites[0], blacks[0]).mul(&k(whites[1], blacks[1])).unwrap();
                let rhs = k(whites[0], blacks[1]).mul(&k(whites[1], blacks[0])).unwrap();
                assert_eq!(lhs, rhs.neg(), "face at ({x},{y})");
            }
        }
    }

    #[test]
    fn worked_kernel_entries() {
        assert_eq!(k_inverse_trunk((1, 1), (1, 0)).unwrap(), c2("0", "1/sqrt(2) - 1"));
        assert_eq!(k_inverse_trunk((2, 0), (1, -2)).unwrap(), c2("3/sqrt(2) - 2", "0"));
        assert_eq!(k_inverse_trunk((2, 0), (1, 0)).unwrap(), c2("sqrt(2) - 1", "0"));
    }

    #[test]
    fn worked_border_matrix() {
        let rows = [(1, 1), (2, 0), (1, -1)];
        let cols = [(1, 0), (3, 0), (1, -2)];
        let expect = [
            [c2("0", "1/sqrt(2) - 1"), c2("0", "sqrt(2) - 3/2"), c2("0", "sqrt(2) - 3/2")],
            [c2("sqrt(2) - 1", "0"), c2("2*sqrt(2) - 3", "0"), c2("3/sqrt(2) - 2", "0")],
            [c2("0", "1 - 1/sqrt(2)"), c2("0", "3/2 - sqrt(2)"), c2("0", "1/2 - 1/sqrt(2)")],
        ];
        for (i, b) in rows.iter().enumerate() {
            for (j, w) in cols.iter().enumerate() {
                assert_eq!(k_inverse_trunk(*b, *w).unwrap(), expect[i][j], "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn three_dimer_events() {
        let left = EventSpec::new(vec![((1, 1), (1, 0)), ((2, 0), (3, 0)), ((1, -1), (1, -2))]).unwrap();
        assert_eq!(event_probability(&TrunkKernel, &left).unwrap(), e2("5/2 - 7/(2*sqrt(2))"));
        let straight = EventSpec::new(vec![((2, 0), (1, 0)), ((1, 1), (1, 2)), ((1, -1), (1, -2))]).unwrap();
        assert_eq!(event_probability(&TrunkKernel, &straight).unwrap(), e2("5/sqrt(2) - 7/2"));
        let empty = EventSpec::new(vec![]).unwrap();
        assert_eq!(event_probability(&TrunkKernel, &empty).unwrap(), RingElem::one(2));
    }

    #[test]
    fn local_inverse_identity() {
        // For whites w, w' near the origin: sum over blacks b ~ w of
        // K(w,b) K^-1(b,w') equals 1 if w = w' else 0 (the hole contributes
        // nothing since both G^A vanish there).
        let whites: Vec<DoubledPoint> = (-3..=3)
            .flat_map(|x| (-3..=3).map(move |y| (x, y)))
            .filter(|&p| is_white(p))
            .collect();
        for &w in &whites {
            for &wp in &whites {
                let mut acc = ComplexElem::zero(2);
                for b in [(w.0 + 1, w.1), (w.0 - 1, w.1), (w.0, w.1 + 1), (w.0, w.1 - 1)] {
                    if b == (0, 0) {
                        continue; // removed hole
                    }
                    let t = k_weight(w, b).unwrap().mul(&k_inverse_trunk(b, wp).unwrap()).unwrap();
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
}
