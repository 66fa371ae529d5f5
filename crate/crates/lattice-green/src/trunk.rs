//! Local statistics of the uniform spanning tree near a conditioned trunk
//! edge, and of the dimer model with a monomer at the origin. Both are read
//! off the same hole-at-origin determinantal kernel.
//!
//! Tree coordinates: tree vertices map to white doubled-lattice vertices by
//! `(a, b) -> (2a+1, 2b)`; the conditioned trunk edge joins tree vertices
//! `(-1, 0)` and `(0, 0)`, and its edge-vertex is the removed black origin.
//! A directed tree edge from `t` in direction `d` corresponds to the dimer
//! pairing the white of `t` with the black edge-vertex in direction `d`.

use crate::exact::{ExactError, ExactResult, RingElem};
use crate::kasteleyn::{
    event_probability, is_black, is_white, DoubledPoint, EventSpec, TrunkKernel,
};

/// Compass direction of a directed tree edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    E,
    N,
    W,
    S,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::E, Dir::N, Dir::W, Dir::S];

    pub fn offset(self) -> (i64, i64) {
        match self {
            Dir::E => (1, 0),
            Dir::N => (0, 1),
            Dir::W => (-1, 0),
            Dir::S => (0, -1),
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Dir::E => "E",
            Dir::N => "N",
            Dir::W => "W",
            Dir::S => "S",
        }
    }

    pub fn from_letter(s: &str) -> Option<Dir> {
        match s {
            "E" => Some(Dir::E),
            "N" => Some(Dir::N),
            "W" => Some(Dir::W),
            "S" => Some(Dir::S),
            _ => None,
        }
    }
}

/// Directed tree edge: tail in tree coordinates plus a direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeEdge {
    pub tail: (i64, i64),
    pub dir: Dir,
}

impl TreeEdge {
    pub fn new(tail: (i64, i64), dir: Dir) -> Self {
        TreeEdge { tail, dir }
    }

    /// White vertex of the tail tree vertex.
    pub fn white(self) -> DoubledPoint {
        (2 * self.tail.0 + 1, 2 * self.tail.1)
    }

    /// Black edge-vertex of the directed edge.
    pub fn black(self) -> DoubledPoint {
        let w = self.white();
        let d = self.dir.offset();
        (w.0 + d.0, w.1 + d.1)
    }

    /// The dimer (black, white) this directed edge compiles to.
    pub fn dimer(self) -> (DoubledPoint, DoubledPoint) {
        (self.black(), self.white())
    }
}

/// Probability of a single directed tree edge under the trunk measure.
pub fn trunk_directed_edge_probability(e: TreeEdge) -> ExactResult<RingElem> {
    let (b, w) = e.dimer();
    if b == (0, 0) {
        return Err(ExactError::Parse(format!(
            "directed edge {e:?} uses the conditioned trunk edge"
        )));
    }
    let event = EventSpec::new(vec![(b, w)])?;
    event_probability(&TrunkKernel, &event)
}

/// Probability of a joint event of directed tree edges (or a raw dimer event).
pub fn trunk_cylinder_probability(edges: &[TreeEdge]) -> ExactResult<RingElem> {
    let dimers: Vec<_> = edges.iter().map(|e| e.dimer()).collect();
    for &(b, _) in &dimers {
        if b == (0, 0) {
            return Err(ExactError::Parse("event uses the conditioned trunk edge".into()));
        }
    }
    event_probability(&TrunkKernel, &EventSpec::new(dimers)?)
}

/// Degree distribution of a trunk vertex (the head of the conditioned edge):
/// exact probabilities of degree 2, 3 and 4.
pub fn trunk_degree_distribution() -> ExactResult<[(u32, RingElem); 3]> {
    // The trunk vertex is tree (0,0), white w0 = (1,0). Its west edge is the
    // trunk edge (always present). For d in {E, N, S}, the edge toward d is
    // additionally present iff the black edge-vertex w0 + d is matched to the
    // far white w0 + 2d, i.e. iff the far tree vertex points back. Degree =
    // 2 + #incoming, so inclusion-exclusion over the three incoming dimers
    // gives the whole distribution.
    let w0: DoubledPoint = (1, 0);
    let incoming: Vec<(DoubledPoint, DoubledPoint)> = [Dir::E, Dir::N, Dir::S]
        .iter()
        .map(|d| {
            let o = d.offset();
            ((w0.0 + o.0, w0.1 + o.1), (w0.0 + 2 * o.0, w0.1 + 2 * o.1))
        })
        .collect();
    let prob = |dimers: &[(DoubledPoint, DoubledPoint)]| -> ExactResult<RingElem> {
        event_probability(&TrunkKernel, &EventSpec::new(dimers.to_vec())?)
    };
    // Pairwise joint probabilities (at most two can be incoming).
    let mut p_pairs = RingElem::zero(2);
    for i in 0..3 {
        for j in i + 1..3 {
            p_pairs = p_pairs.add(&prob(&[incoming[i], incoming[j]])?)?;
        }
    }
    let mut p_singles = RingElem::zero(2);
    for i in 0..3 {
        p_singles = p_singles.add(&prob(&[incoming[i]])?)?;
    }
    let p4 = p_pairs.clone();
    let p2 = RingElem::one(2).sub(&p_singles)?.add(&p_pairs)?;
    let p3 = RingElem::one(2).sub(&p2)?.sub(&p4)?;
    Ok([(2, p2), (3, p3), (4, p4)])
}

/// Probability that the trunk continues straight for `k` more steps, computed
/// both as the k x k kernel determinant on the straight-run dimers and as the
/// closed form `(sqrt(2) - 1)^k`; the two must agree exactly.
pub fn straight_run_probability(k: u32) -> ExactResult<RingElem> {
    assert!(k <= 32, "straight-run length limited to 32");
    let dimers: Vec<_> = (0..k as i64).map(|j| ((2 * j + 2, 0), (2 * j + 1, 0))).collect();
    let det = event_probability(&TrunkKernel, &EventSpec::new(dimers)?)?;
    let mut closed = RingElem::one(2);
    let base = crate::exact::parse_expr("sqrt(2) - 1", 2).expect("constant");
    for _ in 0..k {
        closed = closed.mul(&base)?;
    }
    if det != closed {
        return Err(ExactError::Parse(format!(
            "straight-run determinant {det} disagrees with closed form {closed}"
        )));
    }
    Ok(det)
}

/// Probability of a single dimer under the monomer-at-origin measure.
/// The edge is given as an unordered doubled-lattice edge.
pub fn monomer_dimer_probability(a: DoubledPoint, b: DoubledPoint) -> ExactResult<RingElem> {
    let (black, white) = if is_black(a) && is_white(b) {
        (a, b)
    } else if is_black(b) && is_white(a) {
        (b, a)
    } else {
        return Err(ExactError::Parse(format!("({a:?},{b:?}) is not a lattice edge")));
    };
    if black == (0, 0) {
        return Err(ExactError::Parse("edge is incident to the monomer".into()));
    }
    event_probability(&TrunkKernel, &EventSpec::new(vec![(black, white)])?)
}

/// Every directed-edge probability with tail in the window (inclusive bounds,
/// tree coordinates), skipping the two orientations of the conditioned edge.
pub fn trunk_table(
    x0: i64,
    x1: i64,
    y0: i64,
    y1: i64,
) -> ExactResult<Vec<(TreeEdge, RingElem)>> {
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            for dir in Dir::ALL {
                let e = TreeEdge::new((x, y), dir);
                if e.black() == (0, 0) {
                    continue;
                }
                out.push((e, trunk_directed_edge_probability(e)?));
            }
        }
    }
    Ok(out)
}

/// Re-export of the shared kernel for callers that build raw dimer events.
pub fn kernel() -> TrunkKernel {
    TrunkKernel
}

pub use crate::kasteleyn::TrunkKernel as MonomerKernel;
