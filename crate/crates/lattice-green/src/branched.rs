//! Green's function of `Z^2` with a zipper of negated conductances along the
//! dual path just below the negative diagonal, at arbitrary argument pairs;
//! antisymmetric Green's functions of the vertex- and face-branched double
//! covers; and the slit-plane Green's function by the method of images.
//!
//! The two-argument zipper Green's function `gz(u, v)` is computed by a
//! memoized recursion: unit translations of the zipper are realized as a sweep
//! to an axis-aligned mirror-symmetric zipper position, one endpoint move
//! across a single edge (a rank-2 update with closed-form coefficients), and a
//! sweep back. Sweeps only flip signs on the swept vertex set, so each
//! translation step is exact and consumes O(1) closed-form evaluations.

use crate::exact::{rat_i, ExactError, ExactResult, RingElem};
use crate::plane::{green as plane_green, PlanePoint};
use crate::slit::gh;
use std::collections::HashMap;
use std::sync::Mutex;

/// Conductance sign of the canonical zipper: -1 exactly on the edges
/// `{(k,k),(k+1,k)}` and `{(k,k),(k,k-1)}` for `k <= -1`.
pub fn zipper_sign(a: PlanePoint, b: PlanePoint) -> i64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    // Horizontal edge {(k,k),(k+1,k)}: lo = (k,k), hi = (k+1,k).
    if hi == (lo.0 + 1, lo.1) && lo.0 == lo.1 && lo.0 <= -1 {
        return -1;
    }
    // Vertical edge {(k,k-1),(k,k)}: lo = (k,k-1), hi = (k,k).
    if hi == (lo.0, lo.1 + 1) && hi.0 == hi.1 && hi.0 <= -1 {
        return -1;
    }
    1
}

/// `G_Z((0,0), v)`, which equals the slit-plane value `G_D((0,0), v)`:
/// one half of `G_H` at the rotated coordinates.
pub fn gz_origin(v: PlanePoint) -> RingElem {
    let (a, b) = v;
    gh(((a + b), (b - a).abs())).scale(&crate::exact::rat(1, 2))
}

// ----- mirror sweeps ---------------------------------------------------------------

/// Sweep sign for the deformation of the canonical zipper to the east ray
/// (between rows y = -1 and y = 0): -1 on `{x : y <= min(x - 1, -1)}`.
fn eps_e(p: PlanePoint) -> i64 {
    if p.1 <= (p.0 - 1).min(-1) {
        -1
    } else {
        1
    }
}

fn mirror_e(p: PlanePoint) -> PlanePoint {
    (p.0, -1 - p.1)
}

/// Sweep sign for the deformation to the south ray (between columns x = -1
/// and x = 0): -1 on `{x : y <= x - 1 and x <= -1}`. Exercised by the
/// sweep-set tests; the production path only needs the east mirror.
#[cfg_attr(not(test), allow(dead_code))]
fn eps_s(p: PlanePoint) -> i64 {
    if p.1 <= p.0 - 1 && p.0 <= -1 {
        -1
    } else {
        1
    }
}

#[cfg_attr(not(test), allow(dead_code))]
fn mirror_s(p: PlanePoint) -> PlanePoint {
    (-1 - p.0, p.1)
}

/// Swap-reflection sign: conjugating the zipper across the diagonal flips
/// values exactly on the slit vertices `{(k,k) : k <= -1}`.
fn swap_sign(p: PlanePoint) -> i64 {
    if p.0 == p.1 && p.0 <= -1 {
        -1
    } else {
        1
    }
}

fn swap(p: PlanePoint) -> PlanePoint {
    (p.1, p.0)
}

fn signed(v: RingElem, s: i64) -> RingElem {
    if s < 0 {
        -v
    } else {
        v
    }
}

// Closed-form source columns at the corners of the zipper's start face.

/// `G_Z((0,-1), v)` via the east-ray mirror.
fn col_q(v: PlanePoint) -> RingElem {
    let m = mirror_e(v);
    signed(gz_origin(m), -eps_e(v) * eps_e(m))
}

/// `G_Z((-1,0), v)` via the south-ray mirror.
#[cfg_attr(not(test), allow(dead_code))]
fn col_w(v: PlanePoint) -> RingElem {
    let m = mirror_s(v);
    signed(gz_origin(m), eps_s(v) * eps_s(m))
}

// ----- the translation step --------------------------------------------------------

/// Data of the one-step east translation identity
///
/// `G(x - e1, y - e1) = S(x,y) G(x,y) + T(x,y)`
///
/// with `S = eps'(x) eps'(y) eps_E(x) eps_E(y)`, `eps'(t) = eps_E(t - e1)`, and
/// `T` a combination of the origin and corner source columns. It composes the
/// sweep to the east ray, uncrossing the edge {(0,0),(0,-1)} (moving the ray's
/// start one step east), and the sweep back to the translated diagonal zipper.
struct StepData {
    s: i64,
    t: RingElem,
}

fn east_step(x: PlanePoint, y: PlanePoint) -> StepData {
    let sqrt2 = RingElem::sqrt_term(2, rat_i(1));
    let ex = eps_e(x);
    let ey = eps_e(y);
    let exp = eps_e((x.0 - 1, x.1));
    let eyp = eps_e((y.0 - 1, y.1));
    // Move coefficients for source x (rank-2 update, unit determinant):
    // a = 2 eps_E(x) [col_p(x) - sqrt(2) col_q(x)],
    // b = 2 eps_E(x) [sqrt(2) col_p(x) - col_q(x)].
    let cp = gz_origin(x);
    let cq = col_q(x);
    let a = signed(cp.sub(&sqrt2.mul(&cq).unwrap()).unwrap().scale(&rat_i(2)), ex);
    let b = signed(sqrt2.mul(&cp).unwrap().sub(&cq).unwrap().scale(&rat_i(2)), ex);
    let t_core = a.mul(&gz_origin(y)).unwrap().sub(&b.mul(&col_q(y)).unwrap()).unwrap();
    StepData {
        s: exp * eyp * ex * ey,
        t: signed(t_core, exp * eyp * ey),
    }
}

// ----- memoized general evaluation -------------------------------------------------

struct GzTable {
    memo: HashMap<(PlanePoint, PlanePoint), RingElem>,
}

static GZ: std::sync::OnceLock<Mutex<GzTable>> = std::sync::OnceLock::new();

fn l1(p: PlanePoint) -> i64 {
    p.0.abs() + p.1.abs()
}

fn default_budget(u: PlanePoint, v: PlanePoint) -> i64 {
    if let Ok(s) = std::env::var("LATTICE_ZIPPER_MAX_RECURSION") {
        if let Ok(n) = s.parse::<i64>() {
            return n;
        }
    }
    4 * (l1(u) + l1(v)) + 64
}

/// `G_Z(u, v)` for the canonical zipper, arbitrary vertices.
pub fn gz(u: PlanePoint, v: PlanePoint) -> ExactResult<RingElem> {
    let budget = default_budget(u, v);
    let table = GZ.get_or_init(|| Mutex::new(GzTable { memo: HashMap::new() }));
    let mut guard = table.lock().unwrap();
    // Drive the argument of smaller l1 norm; the chain length is its l1 plus one.
    let (u, v) = if l1(u) <= l1(v) { (u, v) } else { (v, u) };
    gz_rec(&mut guard, u, v, budget)
}

fn gz_rec(t: &mut GzTable, u: PlanePoint, v: PlanePoint, fuel: i64) -> ExactResult<RingElem> {
    if fuel <= 0 {
        return Err(ExactError::Parse("zipper recursion budget exceeded".into()));
    }
    if u == (0, 0) {
        return Ok(gz_origin(v));
    }
    if v == (0, 0) {
        return Ok(gz_origin(u));
    }
    // The operator is symmetric; the memo stores one orientation.
    if let Some(hit) = t.memo.get(&(u, v)).or_else(|| t.memo.get(&(v, u))) {
        return Ok(hit.clone());
    }
    // Drive `u` to the origin: horizontal unit translations of the pair while
    // u.0 != 0, one swap-reflection when u sits on the y-axis. |u.0| strictly
    // decreases on every translation, so the chain has length |u.0| + |u.1| + 1.
    let val = if u.0 == 0 {
        let r = gz_rec(t, swap(u), swap(v), fuel - 1)?;
        signed(r, swap_sign(u) * swap_sign(v))
    } else if u.0 >= 1 {
        // Instantiate the east-step identity at (x, y) = (u, v) and solve for G(u, v).
        let sd = east_step(u, v);
        let shifted = gz_rec(t, (u.0 - 1, u.1), (v.0 - 1, v.1), fuel - 1)?;
        signed(shifted.sub(&sd.t)?, sd.s)
    } else {
        // u.0 <= -1: instantiate at (x, y) = (u + e1, v + e1).
        let x = (u.0 + 1, u.1);
        let y = (v.0 + 1, v.1);
        let sd = east_step(x, y);
        let inner = gz_rec(t, x, y, fuel - 1)?;
        signed(inner, sd.s).add(&sd.t)?
    };
    t.memo.insert((u, v), val.clone());
    Ok(val)
}

// ----- branched covers -------------------------------------------------------------

/// Which sheet of the double cover a point sits on, relative to the principal
/// branch (cut along but just below the negative diagonal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Principal,
    Other,
}

impl Branch {
    fn sign_to(self, other: Branch) -> i64 {
        if self == other {
            1
        } else {
            -1
        }
    }
}

/// Antisymmetric Green's function of the cover branched over the origin
/// vertex; Dirichlet at the origin. Arguments are base points plus branch tags.
pub fn g_sigma_a(v: PlanePoint, w: PlanePoint, bv: Branch, bw: Branch) -> ExactResult<RingElem> {
    if v == (0, 0) || w == (0, 0) {
        return Ok(RingElem::zero(2));
    }
    let g = gz(v, w)?;
    let corr = gz(v, (0, 0))?.mul(&gz((0, 0), w)?)?.div(&gz((0, 0), (0, 0))?)?;
    Ok(signed(g.sub(&corr)?, bv.sign_to(bw)))
}

/// Antisymmetric Green's function of the cover branched over the face at the
/// origin, on the shifted lattice `(Z + 1/2)^2`. Arguments are doubled
/// coordinates (odd integers).
pub fn g_xi_a(v2: PlanePoint, w2: PlanePoint, bv: Branch, bw: Branch) -> ExactResult<RingElem> {
    for p in [v2, w2] {
        if p.0.rem_euclid(2) != 1 || p.1.rem_euclid(2) != 1 {
            return Err(ExactError::Parse(format!("{p:?} is not a doubled half-integer point")));
        }
    }
    let shift = |p: PlanePoint| ((p.0 - 1) / 2, (p.1 - 1) / 2);
    let g = gz(shift(v2), shift(w2))?;
    Ok(signed(g, bv.sign_to(bw)))
}

/// Dirichlet Green's function of `Z^2` minus the slit `D0 = {(k,k) : k <= 0}`,
/// by the method of images in the vertex-branched cover.
pub fn g_slit(v: PlanePoint, w: PlanePoint) -> ExactResult<RingElem> {
    let on_slit = |p: PlanePoint| p.0 == p.1 && p.0 <= 0;
    if on_slit(v) || on_slit(w) {
        return Err(ExactError::Parse(format!("argument on the slit: {v:?}, {w:?}")));
    }
    let half = crate::exact::rat(1, 2);
    let rv = swap(v);
    let d = |a: PlanePoint, b: PlanePoint| plane_green((b.0 - a.0, b.1 - a.1));
    // The image point's lift lands on the opposite sheet, so the image term
    // enters with a plus sign for the antisymmetric part.
    let t1 = g_sigma_a(v, w, Branch::Principal, Branch::Principal)?.scale(&half);
    let t2 = d(v, w).scale(&half);
    let t3 = g_sigma_a(rv, w, Branch::Principal, Branch::Principal)?.scale(&half);
    let t4 = d(rv, w).scale(&half);
    t1.add(&t2)?.add(&t3)?.sub(&t4)
}
