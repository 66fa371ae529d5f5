//! Half-plane function `G_H`: the slit-plane Green's function in rotated
//! coordinates, with vertices at `(x, y)`, `x + y` even, `y >= 0`.
//!
//! Two independent routes are provided: a deterministic exact fill seeded by
//! the boundary series `V(z) = 1/sqrt(1-z^2)` and the vertical recurrence, and
//! bivariate quadrant generating functions. All values are dyadic rationals
//! with `sqrt(2)` adjoined.

use crate::exact::{rat_i, ExactError, ExactResult, RingElem, Series};
use std::collections::HashMap;
use std::sync::Mutex;

/// Point of the half-plane lattice: `x + y` even, `y >= 0`.
pub type HalfPlanePoint = (i64, i64);

pub fn is_half_plane_point(p: HalfPlanePoint) -> bool {
    p.1 >= 0 && (p.0 + p.1) % 2 == 0
}

/// Boundary current series `C(z) = sqrt(1 - 1/z^2)`, returned in the variable
/// `u = 1/z`: the coefficient of `u^k` is the coefficient of `z^(-k)`.
pub fn c_series(n: i64) -> Series {
    let base = Series::from_rationals(2, &[rat_i(1), rat_i(0), rat_i(-1)], n.max(1));
    // sqrt(1 - u^2) = (1 - u^2) * (1 - u^2)^(-1/2)
    let inv = base.sqrt_inv(n.max(1)).expect("unit constant term");
    base.mul(&inv).expect("series product").truncate(n.max(1))
}

/// Row-0 voltage series `V(z) = 1/sqrt(1 - z^2)`; coefficient of `z^(2k)` is
/// `G_H(2k, 0)`.
pub fn v_series(n: i64) -> Series {
    Series::from_rationals(2, &[rat_i(1), rat_i(0), rat_i(-1)], n.max(1))
        .sqrt_inv(n.max(1))
        .expect("unit constant term")
}

struct GhTable {
    filled: i64,
    memo: HashMap<(i64, i64), RingElem>,
}

impl GhTable {
    fn new() -> Self {
        GhTable { filled: -1, memo: HashMap::new() }
    }

    fn ensure(&mut self, radius: i64) {
        if radius <= self.filled {
            return;
        }
        let n = radius.max(8).max(self.filled * 2);
        self.memo.clear();
        self.fill(n);
        self.filled = n;
    }

    /// Deterministic fill of the window `|x| <= n`, `0 <= y <= n` (all exact).
    fn fill(&mut self, n: i64) {
        let height = 2 * n + 6;
        let east = n + 1;
        let two = RingElem::from_int(2, 2);
        let sqrt2 = RingElem::sqrt_term(2, rat_i(1));
        // Row 0: coefficients of V(z), carried out to the full height so the
        // vertical recurrence below never runs off the known range.
        let row0_width = height + 2;
        let v = v_series(row0_width + 1);
        for x in (0..=row0_width).step_by(2) {
            let val = v.coeff(x).expect("within truncation");
            self.memo.insert((x, 0), val);
        }
        for x in (-n - 2..=-2).filter(|x| x % 2 == 0) {
            self.memo.insert((x, 0), RingElem::zero(2));
        }
        // Column 0 by the vertical recurrence G(0,2k) + G(0,2k+2) = sqrt(2) G(2k,0).
        self.memo.insert((0, 0), RingElem::one(2));
        for k in 0.. {
            let y = 2 * k;
            if y + 2 > height {
                break;
            }
            let row0 = self.memo[&(y, 0)].clone();
            let prev = self.memo[&(0, y)].clone();
            let next = sqrt2.mul(&row0).unwrap().sub(&prev).unwrap();
            self.memo.insert((0, y + 2), next);
        }
        // Column -1: G(-1, y) = G(0, y+1)... valid points have odd y here.
        for y in (1..=height - 1).step_by(2) {
            let val = self.memo[&(0, y + 1)].clone();
            self.memo.insert((-1, y), val);
        }
        // Row 1 east: seeded by G(1,1) = 2 - sqrt(2), then the reflected
        // boundary relation 2 G(x,0) = G(x-1,1) + G(x+1,1) for even x >= 2.
        self.memo.insert((1, 1), two.sub(&sqrt2).unwrap());
        for x in (2..=east).step_by(2) {
            let val = two
                .mul(&self.memo[&(x, 0)])
                .unwrap()
                .sub(&self.memo[&(x - 1, 1)])
                .unwrap();
            self.memo.insert((x + 1, 1), val);
        }
        // East region by interior harmonicity at (x-1, y-1):
        // G(x,y) = 4G(x-1,y-1) - G(x-2,y-2) - G(x-2,y) - G(x,y-2).
        let four = RingElem::from_int(2, 4);
        for y in 2..=height {
            for x in 1..=east {
                if (x + y) % 2 != 0 {
                    continue;
                }
                let val = four
                    .mul(&self.memo[&(x - 1, y - 1)])
                    .unwrap()
                    .sub(&self.memo[&(x - 2, y - 2)])
                    .unwrap()
                    .sub(&self.memo[&(x - 2, y)])
                    .unwrap()
                    .sub(&self.memo[&(x, y - 2)])
                    .unwrap();
                self.memo.insert((x, y), val);
            }
        }
        // West columns by the self-duality relation
        // G(-x-1, y-1) = G(-x, y) + G(x, y) - G(x-1, y-1), marching westward.
        for x in 1..=n + 1 {
            let top = height - x;
            for y in 1..=top {
                if (x + y) % 2 != 0 {
                    continue;
                }
                let val = self.memo[&(-x, y)]
                    .add(&self.memo[&(x, y)])
                    .unwrap()
                    .sub(&self.memo[&(x - 1, y - 1)])
                    .unwrap();
                self.memo.insert((-x - 1, y - 1), val);
            }
        }
    }

    fn get(&mut self, p: HalfPlanePoint) -> RingElem {
        assert!(is_half_plane_point(p), "not a half-plane point: {p:?}");
        self.ensure(p.0.abs().max(p.1) + 1);
        self.memo[&p].clone()
    }
}

static GH: std::sync::OnceLock<Mutex<GhTable>> = std::sync::OnceLock::new();

/// Exact `G_H(x, y)` by the deterministic fill.
pub fn gh(p: HalfPlanePoint) -> RingElem {
    GH.get_or_init(|| Mutex::new(GhTable::new())).lock().unwrap().get(p)
}

// ----- quadrant generating functions ----------------------------------------------

/// Dense bivariate power series over `RingElem`, truncated at total order `n`
/// in each variable.
struct BiSeries {
    n: usize,
    c: Vec<RingElem>, // c[i * n + j] multiplies z^i w^j
}

impl BiSeries {
    fn zero(n: usize) -> Self {
        BiSeries { n, c: vec![RingElem::zero(2); n * n] }
    }

    fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.c[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.c[i * self.n + j] = v;
    }

    fn mul(&self, o: &BiSeries) -> BiSeries {
        let n = self.n;
        let mut out = BiSeries::zero(n);
        for i1 in 0..n {
            for j1 in 0..n {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..n - i1 {
                    for j2 in 0..n - j1 {
                        let b = o.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        let t = a.mul(b).unwrap();
                        let cur = out.get(i1 + i2, j1 + j2).add(&t).unwrap();
                        out.set(i1 + i2, j1 + j2, cur);
                    }
                }
            }
        }
        out
    }

    /// Inverse of a series with invertible constant term.
    fn inv(&self) -> BiSeries {
        let n = self.n;
        let lead = self.get(0, 0).clone();
        let lead_inv = RingElem::one(2).div(&lead).expect("unit constant term");
        let mut out = BiSeries::zero(n);
        // March by total degree.
        for d in 0..2 * n - 1 {
            for i in 0..n.min(d + 1) {
                let j = d - i;
                if j >= n {
                    continue;
                }
                if d == 0 {
                    out.set(0, 0, lead_inv.clone());
                    continue;
                }
                // sum_{(a,b) < (i,j)} self[i-a][j-b] * out[a][b] == -self[0][0]*out[i][j]
                let mut acc = RingElem::zero(2);
                for a in 0..=i {
                    for b in 0..=j {
                        if a == i && b == j {
                            continue;
                        }
                        let s = self.get(i - a, j - b);
                        if s.is_zero() {
                            continue;
                        }
                        acc = acc.add(&s.mul(out.get(a, b)).unwrap()).unwrap();
                    }
                }
                out.set(i, j, (-acc).mul(&lead_inv).unwrap());
            }
        }
        out
    }
}

/// Shared denominator `4zw - w^2 - z^2 - z^2 w^2 - 1` (after clearing `zw`).
fn quadrant_denominator(n: usize) -> BiSeries {
    let mut d = BiSeries::zero(n);
    d.set(0, 0, RingElem::from_int(2, -1));
    d.set(1, 1, RingElem::from_int(2, 4));
    d.set(0, 2, RingElem::from_int(2, -1));
    d.set(2, 0, RingElem::from_int(2, -1));
    if n > 2 {
        d.set(2, 2, RingElem::from_int(2, -1));
    }
    d
}

fn univariate_v(n: usize) -> Vec<RingElem> {
    let v = v_series(n as i64 + 1);
    (0..n).map(|k| v.coeff(k as i64).unwrap()).collect()
}

/// Value of `G_H` at `p` extracted from the north (`x >= 0`) or west (`x < 0`)
/// quadrant generating function by exact bivariate expansion.
pub fn quadrant_gf_value(p: HalfPlanePoint) -> ExactResult<RingElem> {
    if !is_half_plane_point(p) {
        return Err(ExactError::Parse(format!("not a half-plane point: {p:?}")));
    }
    let (x, y) = p;
    let order = (x.abs().max(y) + 4) as usize + 1;
    let n = order;
    let sqrt2 = RingElem::sqrt_term(2, rat_i(1));
    let vcoef = univariate_v(n);
    let denom = quadrant_denominator(n);
    let q = denom.inv();
    if x >= 0 {
        // numerator: sqrt(2) (zw - w^2) V(w) + (2zw - z^2 - 1) V(z)
        let mut num = BiSeries::zero(n);
        for k in 0..n {
            let sv = sqrt2.mul(&vcoef[k])?;
            if k + 1 < n {
                num.set(1, k + 1, num.get(1, k + 1).add(&sv)?);
            }
            if k + 2 < n {
                num.set(0, k + 2, num.get(0, k + 2).sub(&sv)?);
            }
            let v = &vcoef[k];
            if k + 1 < n {
                num.set(k + 1, 1, num.get(k + 1, 1).add(&v.scale(&rat_i(2)))?);
            }
            if k + 2 < n {
                num.set(k + 2, 0, num.get(k + 2, 0).sub(v)?);
            }
            num.set(k, 0, num.get(k, 0).sub(v)?);
        }
        let g = num.mul(&q);
        Ok(g.get(x as usize, y as usize).clone())
    } else {
        // In s = 1/z: numerator sqrt(2)(s^2 w^2 - s w) V(w) + s w sqrt(1 - s^2);
        // the coefficient of s^m w^y is G_H(-m, y).
        let c = c_series(n as i64 + 1);
        let mut num = BiSeries::zero(n);
        for k in 0..n {
            let sv = sqrt2.mul(&vcoef[k])?;
            if k + 2 < n {
                num.set(2, k + 2, num.get(2, k + 2).add(&sv)?);
            }
            if k + 1 < n {
                num.set(1, k + 1, num.get(1, k + 1).sub(&sv)?);
            }
            let ck = c.coeff(k as i64)?;
            if k + 1 < n {
                num.set(k + 1, 1, num.get(k + 1, 1).add(&ck)?);
            }
        }
        let g = num.mul(&q);
        Ok(g.get((-x) as usize, y as usize).clone())
    }
}

/// All quadrant-generating-function values on the window `|x| <= xmax`,
/// `0 <= y <= ymax`, sharing one bivariate expansion per quadrant.
pub fn quadrant_gf_window(xmax: i64, ymax: i64) -> ExactResult<Vec<((i64, i64), RingElem)>> {
    let order = (xmax.max(ymax) + 4) as usize + 1;
    let n = order;
    let sqrt2 = RingElem::sqrt_term(2, rat_i(1));
    let vcoef = univariate_v(n);
    let denom = quadrant_denominator(n);
    let q = denom.inv();
    let mut out = Vec::new();
    // north quadrant numerator
    let mut num_n = BiSeries::zero(n);
    for (k, v) in vcoef.iter().enumerate() {
        let sv = sqrt2.mul(v)?;
        if k + 1 < n {
            num_n.set(1, k + 1, num_n.get(1, k + 1).add(&sv)?);
            num_n.set(k + 1, 1, num_n.get(k + 1, 1).add(&v.scale(&rat_i(2)))?);
        }
        if k + 2 < n {
            num_n.set(0, k + 2, num_n.get(0, k + 2).sub(&sv)?);
            num_n.set(k + 2, 0, num_n.get(k + 2, 0).sub(v)?);
        }
        num_n.set(k, 0, num_n.get(k, 0).sub(v)?);
    }
    let gn = num_n.mul(&q);
    // west quadrant numerator (variable s = 1/z)
    let c = c_series(n as i64 + 1);
    let mut num_w = BiSeries::zero(n);
    for (k, v) in vcoef.iter().enumerate() {
        let sv = sqrt2.mul(v)?;
        if k + 2 < n {
            num_w.set(2, k + 2, num_w.get(2, k + 2).add(&sv)?);
        }
        if k + 1 < n {
            num_w.set(1, k + 1, num_w.get(1, k + 1).sub(&sv)?);
            num_w.set(k + 1, 1, num_w.get(k + 1, 1).add(&c.coeff(k as i64)?)?);
        }
    }
    let gw = num_w.mul(&q);
    for x in -xmax..=xmax {
        for y in 0..=ymax {
            if (x + y) % 2 != 0 {
                continue;
            }
            let v = if x >= 0 {
                gn.get(x as usize, y as usize).clone()
            } else {
                gw.get((-x) as usize, y as usize).clone()
            };
            out.push(((x, y), v));
        }
    }
    Ok(out)
}
