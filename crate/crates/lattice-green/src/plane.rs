//! Full-plane potential kernel of `Z^2` and the transfer-impedance process of
//! the uniform spanning tree.
//!
//! The potential kernel `A` is normalized by `A(0,0) = 0`, `A(1,0) = 1/4`; it
//! is discrete-harmonic away from the origin where `ΔA = -1` under
//! `Δf(v) = Σ_{v'~v} (f(v) - f(v'))`. Values lie in `Q + (1/pi)Q`. The full
//! dihedral symmetry plus harmonicity determines the table from the diagonal
//! seed `A(k,k) = (1/pi) Σ_{j=1..k} 1/(2j-1)`, which matches every tabulated
//! value (the odd-harmonic sum; see the fixture regression).

use crate::exact::{rat_i, ExactError, ExactResult, PiPoly, Rat, RingElem};
use num_traits::One;
use std::sync::Mutex;

/// Lattice point of `Z^2`.
pub type PlanePoint = (i64, i64);

/// Memoized potential-kernel table. Values are published octant-by-octant;
/// population is serialized behind a mutex, reads clone small values.
pub struct PotentialTable {
    // columns[x][y] = A(x, y) for 0 <= y <= x.
    columns: Mutex<Vec<Vec<RingElem>>>,
}

impl Default for PotentialTable {
    fn default() -> Self {
        Self::new()
    }
}

impl PotentialTable {
    pub fn new() -> Self {
        PotentialTable { columns: Mutex::new(Vec::new()) }
    }

    /// `A(p)`: exact potential-kernel value at `p`.
    pub fn potential(&self, p: PlanePoint) -> RingElem {
        let (x, y) = octant(p);
        let mut cols = self.columns.lock().unwrap();
        while cols.len() as i64 <= x {
            let x_new = cols.len() as i64;
            let col = next_column(&cols, x_new);
            cols.push(col);
        }
        cols[x as usize][y as usize].clone()
    }
}

/// Fold a point into the fundamental octant `0 <= y <= x`.
fn octant(p: PlanePoint) -> (i64, i64) {
    let (x, y) = (p.0.abs(), p.1.abs());
    if y > x {
        (y, x)
    } else {
        (x, y)
    }
}

/// Diagonal seed: `A(k,k) = (1/pi) * Σ_{j=1..k} 1/(2j-1)`.
fn diagonal(k: i64) -> RingElem {
    let mut acc = Rat::from_integer(0.into());
    for j in 1..=k {
        acc += Rat::one() / rat_i(2 * j - 1);
    }
    RingElem::new(2, rat_i(0), rat_i(0), acc, rat_i(0))
}

fn next_column(cols: &[Vec<RingElem>], x: i64) -> Vec<RingElem> {
    let get = |cx: i64, cy: i64| -> RingElem {
        let (fx, fy) = octant((cx, cy));
        cols[fx as usize][fy as usize].clone()
    };
    if x == 0 {
        return vec![RingElem::zero(2)];
    }
    if x == 1 {
        return vec![RingElem::from_frac(2, 1, 4), diagonal(1)];
    }
    let mut col = vec![RingElem::zero(2); (x + 1) as usize];
    col[x as usize] = diagonal(x);
    // One below the diagonal from harmonicity at (x-1, x-1):
    // 4 A(k,k) = 2 A(k,k-1) + 2 A(k+1,k).
    let k = x - 1;
    col[k as usize] = get(k, k)
        .scale(&rat_i(2))
        .sub(&get(k, k - 1))
        .unwrap();
    // Interior rows from harmonicity at (x-1, y):
    // A(x,y) = 4 A(x-1,y) - A(x-2,y) - A(x-1,y-1) - A(x-1,y+1).
    for y in (1..=x - 2).rev() {
        col[y as usize] = get(x - 1, y)
            .scale(&rat_i(4))
            .sub(&get(x - 2, y))
            .unwrap()
            .sub(&get(x - 1, y - 1))
            .unwrap()
            .sub(&get(x - 1, y + 1))
            .unwrap();
    }
    // Axis row from harmonicity at (x-1, 0): A(x,0) = 4A(x-1,0) - A(x-2,0) - 2A(x-1,1).
    col[0] = get(x - 1, 0)
        .scale(&rat_i(4))
        .sub(&get(x - 2, 0))
        .unwrap()
        .sub(&get(x - 1, 1).scale(&rat_i(2)))
        .unwrap();
    col
}

static TABLE: std::sync::OnceLock<PotentialTable> = std::sync::OnceLock::new();

fn table() -> &'static PotentialTable {
    TABLE.get_or_init(PotentialTable::new)
}

/// Exact potential kernel `A(p)` (negative of the plane Green's function).
pub fn potential(p: PlanePoint) -> RingElem {
    table().potential(p)
}

/// Plane Green's function `G(p) = -A(p)`, vanishing at the origin.
pub fn green(p: PlanePoint) -> RingElem {
    -potential(p)
}

/// Floating-point potential kernel, switching to the classical logarithmic
/// asymptotics beyond the exact table's comfortable range. The error of the
/// asymptotic form is O(1/|p|^2).
pub fn potential_f64(p: PlanePoint) -> f64 {
    let (x, y) = octant(p);
    if x <= 24 {
        return potential((x, y)).to_f64();
    }
    let r2 = (x * x + y * y) as f64;
    let euler = 0.577_215_664_901_532_9_f64;
    0.25 * r2.ln() / std::f64::consts::PI + (2.0 * euler + 3.0 * 2.0_f64.ln()) / (4.0 * std::f64::consts::PI)
}

/// An ordered nearest-neighbor edge.
pub type Edge = (PlanePoint, PlanePoint);

fn check_edge(e: Edge) -> ExactResult<()> {
    let d = ((e.1 .0 - e.0 .0).abs(), (e.1 .1 - e.0 .1).abs());
    if d == (1, 0) || d == (0, 1) {
        Ok(())
    } else {
        Err(ExactError::Parse(format!("{e:?} is not a nearest-neighbor edge")))
    }
}

/// Transfer impedance `T(e1, e2) = G(v,x) - G(v,y) - G(w,x) + G(w,y)` for
/// `e1 = (v,w)`, `e2 = (x,y)`, with `G(a,b) = -A(b - a)`.
pub fn transfer_impedance(e1: Edge, e2: Edge) -> ExactResult<RingElem> {
    check_edge(e1)?;
    check_edge(e2)?;
    let ((v, w), (x, y)) = (e1, e2);
    let g = |a: PlanePoint, b: PlanePoint| green((b.0 - a.0, b.1 - a.1));
    g(v, x).sub(&g(v, y))?.sub(&g(w, x))?.add(&g(w, y))
}

/// Probability that all given edges lie in the uniform spanning tree:
/// `det [T(e_i, e_j)]`. The determinant can carry powers of `1/pi` beyond the
/// graded ring, so it is returned as an exact pi-polynomial.
pub fn ust_cylinder_probability(edges: &[Edge]) -> ExactResult<PiPoly> {
    let n = edges.len();
    let mut m = Vec::with_capacity(n * n);
    for &a in edges {
        for &b in edges {
            m.push(PiPoly::from_ring(&transfer_impedance(a, b)?));
        }
    }
    det_pipoly(&mut m, n)
}

/// Fraction-free (Bareiss) determinant over the pi-polynomial ring... the ring
/// has zero divisors only at zero; plain expansion is fine at these sizes.
fn det_pipoly(m: &mut [PiPoly], n: usize) -> ExactResult<PiPoly> {
    match n {
        0 => return Ok(PiPoly::one(2)),
        1 => return Ok(m[0].clone()),
        _ => {}
    }
    // Cofactor expansion along the first row (n stays small for cylinder events).
    let mut acc = PiPoly::zero(m[0].rad);
    for j in 0..n {
        if m[j].is_zero() {
            continue;
        }
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for r in 1..n {
            for c in 0..n {
                if c != j {
                    minor.push(m[r * n + c].clone());
                }
            }
        }
        let sub = det_pipoly(&mut minor, n - 1)?;
        let term = m[j].mul(&sub)?;
        acc = if j % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_expr;

    fn e2(s: &str) -> RingElem {
        parse_expr(s, 2).unwrap()
    }

    #[test]
    fn potential_small_values() {
        assert_eq!(potential((0, 0)), RingElem::zero(2));
        assert_eq!(potential((1, 0)), e2("1/4"));
        assert_eq!(potential((1, 1)), e2("1/pi"));
        assert_eq!(potential((2, 1)), e2("2/pi - 1/4"));
        assert_eq!(potential((3, 0)), e2("17/4 - 12/pi"));
        assert_eq!(potential((2, 2)), e2("4/(3*pi)"));
    }

    #[test]
    fn harmonicity_and_symmetry() {
        for x in -6..=6i64 {
            for y in -6..=6i64 {
                let a = potential((x, y));
                assert_eq!(a, potential((y, x)));
                assert_eq!(a, potential((-x, y)));
                let nbr_sum = potential((x + 1, y))
                    .add(&potential((x - 1, y)))
                    .unwrap()
                    .add(&potential((x, y + 1)))
                    .unwrap()
                    .add(&potential((x, y - 1)))
                    .unwrap();
                let lap = a.scale(&rat_i(4)).sub(&nbr_sum).unwrap();
                if (x, y) == (0, 0) {
                    assert_eq!(lap, RingElem::from_int(2, -1));
                } else {
                    assert!(lap.is_zero(), "Laplacian residual at ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn single_edge_probability_is_half() {
        let e = ((0, 0), (1, 0));
        assert_eq!(transfer_impedance(e, e).unwrap(), e2("1/2"));
        let p = ust_cylinder_probability(&[e]).unwrap();
        assert_eq!(p.to_ring().unwrap(), e2("1/2"));
    }

    #[test]
    fn empty_event_has_probability_one() {
        assert_eq!(ust_cylinder_probability(&[]).unwrap(), PiPoly::one(2));
    }

    #[test]
    fn far_apart_edges_decorrelate() {
        // T(e1, e2) is a second difference of the potential kernel; at
        // separation 10^6 the asymptotic form bounds it far below 1e-3.
        let ((v, w), (x, y)) = (((0i64, 0i64), (1i64, 0i64)), ((1_000_000i64, 0), (1_000_001i64, 0)));
        let g = |a: PlanePoint, b: PlanePoint| -potential_f64((b.0 - a.0, b.1 - a.1));
        let t = g(v, x) - g(v, y) - g(w, x) + g(w, y);
        assert!(t.abs() < 1e-3, "T = {t}");
        // Same second difference at a modest separation, fully exact.
        let t30 = transfer_impedance(((0, 0), (1, 0)), ((30, 0), (31, 0))).unwrap();
        assert!(t30.to_f64().abs() < 1e-3);
    }

    #[test]
    fn rejects_non_edges() {
        assert!(transfer_impedance(((0, 0), (2, 0)), ((0, 0), (1, 0))).is_err());
    }

    #[test]
    fn perpendicular_pair_needs_pi_squared() {
        let p = ust_cylinder_probability(&[((0, 0), (1, 0)), ((0, 0), (0, 1))]).unwrap();
        assert_eq!(p.pi_degree(), 2);
        let v = p.to_f64();
        // 1/pi - 1/pi^2
        let expect = 1.0 / std::f64::consts::PI - 1.0 / std::f64::consts::PI.powi(2);
        assert!((v - expect).abs() < 1e-12);
        assert!(v > 0.0 && v < 1.0);
    }
}
