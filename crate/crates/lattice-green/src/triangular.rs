//! Triangular-lattice computations: full-plane axis Green differences, the
//! slit-plane voltage series, the face-branched Green's function, and the
//! geometric straight-runs constant.
//!
//! Vertices `(x, y)` sit at `x + y exp(2 pi i/3)`; the six neighbors are
//! `+-(1,0), +-(0,1), +-(1,1)`. The face-branched function uses the zipper
//! along the 210-degree ray through face centers: its crossed edges are those
//! crossing that ray, the configuration is mirror-symmetric across the
//! 30-degree line `(x,y) -> (x, x-y)`, and the lattice points on the ray
//! itself, `(-2k,-k)`, carry value zero.

use crate::exact::ring::Quad;
use crate::exact::{rat, rat_i, ExactError, ExactResult, RingElem, Series};
use std::collections::HashMap;
use std::sync::Mutex;

pub type TriPoint = (i64, i64);

pub const NEIGHBOR_OFFSETS: [TriPoint; 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)];

fn elem(rad: u32, q: Quad) -> RingElem {
    RingElem { rad, q0: q, q1: Quad::zero() }
}

/// `alpha = 2 - sqrt(3)`.
pub fn alpha() -> RingElem {
    RingElem::new(3, rat_i(2), rat_i(-1), rat_i(0), rat_i(0))
}

fn alpha_sq() -> RingElem {
    RingElem::new(3, rat_i(7), rat_i(-4), rat_i(0), rat_i(0))
}

/// Axis Green differences `G((x,0)) - G((x+1,0))` as a series: the
/// coefficient of `u^(2x+1)` is the difference at `x`. Computed from the
/// closed form by exact series calculus: with `s(u) = sqrt(1 - 14u^2 + u^4)`,
/// the arc-cotangent part integrates to `g(u)` with
/// `g'(u) = -4 sqrt(3) u / ((1-u^2) s(u))`, and
/// `delta_+(u) = u (pi/6 + g(u)) / (pi s(u))`.
pub fn tri_delta_plus(n: i64) -> ExactResult<Series> {
    let n = n.max(2);
    let m = (n + 2).max(6);
    let base = Series::from_rationals(3, &[rat_i(1), rat_i(0), rat_i(-14), rat_i(0), rat_i(1)], m);
    let s_inv = base.sqrt_inv(m)?;
    let one_minus_u2 = Series::from_rationals(3, &[rat_i(1), rat_i(0), rat_i(-1)], m);
    let one = Series::constant(3, RingElem::one(3), m);
    let inv_1mu2 = one.div(&one_minus_u2)?;
    // g'(u) = -4 sqrt(3) u * inv(1-u^2) * s_inv
    let u = Series::monomial(3, RingElem::one(3), 1, m);
    let gp = u
        .mul(&inv_1mu2)?
        .mul(&s_inv)?
        .scale(&RingElem::sqrt_term(3, rat_i(-4)))?;
    let g = gp.integrate()?;
    // delta = u * s_inv * (1/6 + g/pi)
    let inv_pi = RingElem::new(3, rat_i(0), rat_i(0), rat_i(1), rat_i(0));
    let bracket = g.scale(&inv_pi)?.add(&Series::constant(3, RingElem::from_frac(3, 1, 6), m))?;
    Ok(u.mul(&s_inv)?.mul(&bracket)?.truncate(n))
}

/// Slit-plane voltage series `V(u) = alpha / sqrt((1-u^2)(1-alpha^2 u^2))`;
/// the coefficient of `u^(2k)` is the slit Green value at `(k, 0)`.
pub fn tri_slit_voltage(n: i64) -> ExactResult<Series> {
    let n = n.max(1);
    let m = n.max(3);
    let a2 = alpha_sq();
    let f1 = Series::new(3, 0, vec![RingElem::one(3), RingElem::zero(3), RingElem::from_int(3, -1)], m);
    let f2 = Series::new(3, 0, vec![RingElem::one(3), RingElem::zero(3), -a2], m);
    Ok(f1.mul(&f2)?.sqrt_inv(m)?.scale(&alpha())?.truncate(n))
}

/// `(2 - sqrt(3))^k`: the probability that the trunk goes straight `k` times.
pub fn tri_runs_constant(k: u32) -> ExactResult<RingElem> {
    assert!(k <= 32);
    let base = alpha();
    let from_series = tri_slit_voltage(1)?.coeff(0)?;
    if from_series != base {
        return Err(ExactError::Parse("voltage constant term disagrees with the runs base".into()));
    }
    let mut acc = RingElem::one(3);
    for _ in 0..k {
        acc = acc.mul(&base)?;
    }
    Ok(acc)
}

// ----- face-branched Green's function ----------------------------------------------

/// Height numerator of a vertex relative to the 210-degree ray: `2y - x`.
fn ray_height(p: TriPoint) -> i64 {
    2 * p.1 - p.0
}

/// Sign of the edge {a, b} under the face-branched zipper: -1 when the edge
/// crosses the 210-degree ray (offset infinitesimally below the lattice
/// points on it).
pub fn tri_zipper_sign(a: TriPoint, b: TriPoint) -> i64 {
    let (ma, mb) = (ray_height(a), ray_height(b));
    let (hi, lo, mhi, mlo) = if ma >= mb { (a, b, ma, mb) } else { (b, a, mb, ma) };
    if !(mhi >= 0 && mlo <= -1) {
        return 1;
    }
    // Crossing point of the embedded edge with the ray line; the zipper only
    // occupies the ray with embedded abscissa below about -0.4.
    // px = x - y/2 in halves: 2 px = 2x - y.
    let t_num = mhi; // t = mhi / (mhi - mlo)
    let t_den = mhi - mlo;
    let px2_hi = 2 * hi.0 - hi.1;
    let px2_lo = 2 * lo.0 - lo.1;
    // crossing 2px = px2_hi + t (px2_lo - px2_hi); compare against -4/5.
    let lhs = 5 * (px2_hi * t_den + t_num * (px2_lo - px2_hi));
    if lhs < -4 * t_den {
        -1
    } else {
        1
    }
}

fn mirror(p: TriPoint) -> TriPoint {
    (p.0, p.0 - p.1)
}

/// Sweep sign between the face zipper and the straight below-axis zipper:
/// -1 on the wedge `{ y <= -1, x <= 2y }`.
fn sweep_sign(p: TriPoint) -> i64 {
    if p.1 <= -1 && p.0 <= 2 * p.1 {
        -1
    } else {
        1
    }
}

/// Ray value of the face-branched function on the 0/60-degree rays (k >= 0)
/// and 180/240-degree rays (k < 0), from the exact generating functions.
fn ray_series(n: i64) -> ExactResult<Series> {
    // 1 / sqrt((1-u)(1-alpha^2 u))
    let a2 = alpha_sq();
    let f1 = Series::new(3, 0, vec![RingElem::one(3), RingElem::from_int(3, -1)], n);
    let f2 = Series::new(3, 0, vec![RingElem::one(3), -a2], n);
    f1.mul(&f2)?.sqrt_inv(n)
}

struct TriTable {
    radius: i64,
    // face-branched values, figure convention (symmetric zipper)
    face: HashMap<TriPoint, RingElem>,
    // slit-plane values G_D(0, .)
    slit: HashMap<TriPoint, RingElem>,
}

static TRI: std::sync::OnceLock<Mutex<TriTable>> = std::sync::OnceLock::new();

fn c1() -> RingElem {
    // 1/2 + 1/sqrt(3) = 1/2 + sqrt(3)/3
    RingElem::new(3, rat(1, 2), rat(1, 3), rat_i(0), rat_i(0))
}

fn c2() -> RingElem {
    // 1/(2 sqrt(3)) = sqrt(3)/6
    RingElem::new(3, rat_i(0), rat(1, 6), rat_i(0), rat_i(0))
}

impl TriTable {
    fn new() -> Self {
        TriTable { radius: -1, face: HashMap::new(), slit: HashMap::new() }
    }

    fn ensure(&mut self, radius: i64) -> ExactResult<()> {
        if radius <= self.radius {
            return Ok(());
        }
        let r = radius.max(8);
        self.solve_window(r)?;
        self.radius = r;
        Ok(())
    }

    fn window_points(r: i64) -> Vec<TriPoint> {
        let mut pts = Vec::new();
        for x in -r..=r {
            for y in -r..=r {
                if (x - y).abs() <= r {
                    pts.push((x, y));
                }
            }
        }
        pts
    }

    /// Exact solve of the face-branched values on a hexagonal window from:
    /// signed harmonicity, the known axis and diagonal lines, the mirror
    /// symmetry, and the conjugation symmetry of the slit-plane function
    /// transported through the linear relation between the two functions.
    fn solve_window(&mut self, r: i64) -> ExactResult<()> {
        let pts = Self::window_points(r);
        let inset: std::collections::HashSet<TriPoint> = pts.iter().copied().collect();
        let rays = ray_series(2 * r + 4)?;
        let scale_pos = {
            // 1/sqrt(12) = sqrt(3)/6
            RingElem::new(3, rat_i(0), rat(1, 6), rat_i(0), rat_i(0))
        };
        let scale_neg = {
            // 1/sqrt(3) - 1/2 = sqrt(3)/3 - 1/2
            RingElem::new(3, rat(-1, 2), rat(1, 3), rat_i(0), rat_i(0))
        };
        let known_val = |p: TriPoint| -> Option<ExactResult<RingElem>> {
            let on_axis = p.1 == 0;
            let on_diag = p.0 == p.1;
            if !on_axis && !on_diag {
                return None;
            }
            let k = p.0;
            Some(if k >= 0 {
                rays.coeff(k).and_then(|c| c.mul(&scale_pos))
            } else {
                rays.coeff(-k - 1).and_then(|c| c.mul(&scale_neg))
            })
        };
        // Mirror-canonical representatives of the unknowns.
        let canon = |p: TriPoint| -> TriPoint {
            let m = mirror(p);
            if inset.contains(&m) && m < p {
                m
            } else {
                p
            }
        };
        let mut unknowns: Vec<TriPoint> = pts
            .iter()
            .copied()
            .filter(|&p| known_val(p).is_none() && canon(p) == p)
            .collect();
        unknowns.sort();
        let index: HashMap<TriPoint, usize> = unknowns.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let ncols = unknowns.len();

        // Assemble rows: coefficients plus right-hand side.
        let mut rows: Vec<(Vec<Quad>, Quad)> = Vec::new();
        let push_term = |row: &mut Vec<Quad>, rhs: &mut Quad, p: TriPoint, coef: &RingElem| -> ExactResult<()> {
            if let Some(v) = known_val(p) {
                let v = v?;
                let t = coef.mul(&v)?;
                *rhs = Quad::new(&rhs.a - t.q0.a, &rhs.b - t.q0.b);
            } else {
                let i = index[&canon(p)];
                row[i] = Quad::new(&row[i].a + &coef.q0.a, &row[i].b + &coef.q0.b);
            }
            Ok(())
        };
        // Signed harmonicity at interior points.
        for &p in &pts {
            let nbrs: Vec<TriPoint> = NEIGHBOR_OFFSETS.iter().map(|d| (p.0 + d.0, p.1 + d.1)).collect();
            if nbrs.iter().any(|n| !inset.contains(n)) {
                continue;
            }
            let mut row = vec![Quad::zero(); ncols];
            let mut rhs = if p == (0, 0) { Quad::one() } else { Quad::zero() };
            push_term(&mut row, &mut rhs, p, &RingElem::from_int(3, 6))?;
            for n in nbrs {
                let sign = tri_zipper_sign(p, n);
                push_term(&mut row, &mut rhs, n, &RingElem::from_int(3, -sign))?;
            }
            rows.push((row, rhs));
        }
        // Conjugation of the slit-plane function through the relation.
        let (c1v, c2v) = (c1(), c2());
        for &p in &pts {
            let (x, y) = p;
            if y == 0 {
                continue;
            }
            let quad = [(x, y), (y - x - 1, y), (x - y, -y), (-x - 1, -y)];
            if quad.iter().any(|q| !inset.contains(q)) {
                continue;
            }
            let s_pos = if y > 0 { 1 } else { -1 };
            let mut row = vec![Quad::zero(); ncols];
            let mut rhs = Quad::zero();
            let coef = |c: &RingElem, s: i64, q: TriPoint| -> RingElem {
                let sign = s * sweep_sign(q);
                if sign < 0 {
                    -c.clone()
                } else {
                    c.clone()
                }
            };
            push_term(&mut row, &mut rhs, quad[0], &coef(&c1v, 1, quad[0]))?;
            push_term(&mut row, &mut rhs, quad[1], &coef(&c2v, -s_pos, quad[1]))?;
            push_term(&mut row, &mut rhs, quad[2], &coef(&c1v, -1, quad[2]))?;
            push_term(&mut row, &mut rhs, quad[3], &coef(&c2v, -s_pos, quad[3]))?;
            rows.push((row, rhs));
        }

        let sol = solve_exact(rows, ncols)?;
        self.face.clear();
        self.slit.clear();
        for &p in &pts {
            let v = if let Some(v) = known_val(p) {
                v?
            } else {
                sol[index[&canon(p)]].clone()
            };
            self.face.insert(p, v);
        }
        // Slit values: row 0 from the voltage series, elsewhere by inverting
        // the two-point linear relation.
        let volt = tri_slit_voltage(2 * r + 4)?;
        for &p in &pts {
            let (x, y) = p;
            if y == 0 {
                let v = if x >= 0 { volt.coeff(2 * x)? } else { RingElem::zero(3) };
                self.slit.insert(p, v);
                continue;
            }
            let w = (y - x - 1, y);
            if !inset.contains(&w) {
                continue;
            }
            let s_pos = if y > 0 { 1 } else { -1 };
            let canonical = |q: TriPoint| -> RingElem {
                let v = self.face[&q].clone();
                if sweep_sign(q) < 0 {
                    -v
                } else {
                    v
                }
            };
            // G_D(v) = (c1 Gc(v) - s c2 Gc(w)) / (c1^2 - c2^2)
            let det = c1v.mul(&c1v)?.sub(&c2v.mul(&c2v)?)?;
            let mut num = c1v.mul(&canonical(p))?;
            let t = c2v.mul(&canonical(w))?;
            num = if s_pos > 0 { num.sub(&t)? } else { num.add(&t)? };
            self.slit.insert(p, num.div(&det)?);
        }
        Ok(())
    }
}

/// Exact Gaussian elimination over `Q[sqrt(3)]` for an overdetermined
/// consistent system; every equation is verified against the solution.
fn solve_exact(rows: Vec<(Vec<Quad>, Quad)>, ncols: usize) -> ExactResult<Vec<RingElem>> {
    let mut work = rows.clone();
    let mut pivots: Vec<usize> = Vec::new(); // row index of pivot for each column
    let mut used = vec![false; work.len()];
    for col in 0..ncols {
        // Find an unused row with a nonzero entry in this column.
        let Some(r) = (0..work.len()).find(|&r| !used[r] && !work[r].0[col].is_zero()) else {
            return Err(ExactError::Parse(format!("window system is degenerate at column {col}")));
        };
        used[r] = true;
        pivots.push(r);
        let pinv = work[r].0[col].inv(3)?;
        // Normalize pivot row.
        {
            let (row, rhs) = &mut work[r];
            for c in col..ncols {
                let v = row[c].mul(&pinv, 3);
                row[c] = v;
            }
            *rhs = rhs.mul(&pinv, 3);
        }
        let (prow, prhs) = (work[r].0.clone(), work[r].1.clone());
        for rr in 0..work.len() {
            if rr == r || work[rr].0[col].is_zero() {
                continue;
            }
            let f = work[rr].0[col].clone();
            let (row, rhs) = &mut work[rr];
            for c in col..ncols {
                let t = f.mul(&prow[c], 3);
                row[c] = Quad::new(&row[c].a - t.a, &row[c].b - t.b);
            }
            let t = f.mul(&prhs, 3);
            *rhs = Quad::new(&rhs.a - t.a, &rhs.b - t.b);
        }
    }
    // Disturbed rows must now be identically zero (consistency check).
    for (row, rhs) in &work {
        if row.iter().all(|q| q.is_zero()) && !rhs.is_zero() {
            return Err(ExactError::Parse("window system is inconsistent".into()));
        }
    }
    let mut sol = vec![RingElem::zero(3); ncols];
    for (col, &r) in pivots.iter().enumerate() {
        sol[col] = elem(3, work[r].1.clone());
    }
    // Verify against the original rows.
    for (row, rhs) in &rows {
        let mut acc = Quad::zero();
        for (c, coef) in row.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let t = coef.mul(&sol[c].q0, 3);
            acc = Quad::new(acc.a + t.a, acc.b + t.b);
        }
        if &Quad::new(&acc.a - &rhs.a, &acc.b - &rhs.b) != &Quad::zero() {
            return Err(ExactError::Parse("window solution fails an equation".into()));
        }
    }
    Ok(sol)
}

fn table() -> &'static Mutex<TriTable> {
    TRI.get_or_init(|| Mutex::new(TriTable::new()))
}

/// Face-branched Green's function `G~(0, v)` (figure convention: zipper along
/// the 210-degree ray).
pub fn tri_face_branched(v: TriPoint) -> ExactResult<RingElem> {
    let mut t = table().lock().unwrap();
    t.ensure(v.0.abs().max(v.1.abs()).max((v.0 - v.1).abs()) + 2)?;
    Ok(t.face[&v].clone())
}

/// Slit-plane Green's function `G_D(0, v)` on the triangular lattice
/// (Dirichlet on the negative axis).
pub fn tri_slit_green(v: TriPoint) -> ExactResult<RingElem> {
    let mut t = table().lock().unwrap();
    t.ensure(v.0.abs().max(v.1.abs()).max((v.0 - v.1).abs()) + 2)?;
    t.slit
        .get(&v)
        .cloned()
        .ok_or_else(|| ExactError::Parse(format!("{v:?} outside the solved window")))
}
