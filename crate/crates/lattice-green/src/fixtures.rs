//! Embedded regression tables transcribed from the tabulated figure sources,
//! and the exact comparisons against freshly computed values.

use crate::branched::{g_sigma_a, g_xi_a, Branch};
use crate::exact::{parse_expr, ExactResult, RingElem};
use crate::slit::{gh, quadrant_gf_value};
use crate::triangular::{tri_face_branched, tri_slit_green};
use crate::trunk::{trunk_directed_edge_probability, Dir, TreeEdge};
use serde::Deserialize;

pub const FIG_POTENTIAL: &str = include_str!("../fixtures/fig_potential.json");
pub const FIG_GH: &str = include_str!("../fixtures/fig_gh.json");
pub const FIG_GSA10: &str = include_str!("../fixtures/fig_gsa10.json");
pub const FIG_G11FACE: &str = include_str!("../fixtures/fig_g11face.json");
pub const FIG1_TRUNK: &str = include_str!("../fixtures/fig1_trunk.json");
pub const FIG_TRI_EDGE: &str = include_str!("../fixtures/fig_tri_edge.json");
pub const FIG_TRI_FACE: &str = include_str!("../fixtures/fig_tri_face.json");

#[derive(Deserialize)]
pub struct PointFixture {
    pub radicand: u32,
    pub entries: Vec<PointEntry>,
}

#[derive(Deserialize)]
pub struct PointEntry {
    pub x: i64,
    pub y: i64,
    #[serde(default)]
    pub branch: Option<String>,
    pub value: String,
}

#[derive(Deserialize)]
pub struct EdgeFixture {
    pub radicand: u32,
    pub entries: Vec<EdgeEntry>,
}

#[derive(Deserialize)]
pub struct EdgeEntry {
    pub tail: [i64; 2],
    pub dir: String,
    pub value: String,
}

/// One regression mismatch: a human-readable key plus both values.
#[derive(Debug)]
pub struct Mismatch {
    pub key: String,
    pub expected: String,
    pub computed: String,
}

fn check<'a>(
    entries: impl Iterator<Item = (String, RingElem, ExactResult<RingElem>)> + 'a,
) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for (key, expected, computed) in entries {
        match computed {
            Ok(v) if v == expected => {}
            Ok(v) => out.push(Mismatch {
                key,
                expected: expected.render(),
                computed: v.render(),
            }),
            Err(e) => out.push(Mismatch {
                key,
                expected: expected.render(),
                computed: format!("error: {e}"),
            }),
        }
    }
    out
}

fn parse_fixture(text: &str) -> PointFixture {
    serde_json::from_str(text).expect("malformed embedded fixture")
}

/// Potential-kernel window (49 entries).
pub fn check_potential() -> Vec<Mismatch> {
    let f = parse_fixture(FIG_POTENTIAL);
    check(f.entries.iter().map(|e| {
        let expected = parse_expr(&e.value, f.radicand).expect("fixture value");
        let got = crate::plane::potential((e.x, e.y));
        (format!("A({},{})", e.x, e.y), expected, Ok(got))
    }))
}

/// Half-plane table via the deterministic fill.
pub fn check_gh_fill() -> Vec<Mismatch> {
    let f = parse_fixture(FIG_GH);
    check(f.entries.iter().map(|e| {
        let expected = parse_expr(&e.value, f.radicand).expect("fixture value");
        (format!("G_H({},{})", e.x, e.y), expected, Ok(gh((e.x, e.y))))
    }))
}

/// Half-plane table via the quadrant generating functions.
pub fn check_gh_generating_functions(cap: i64) -> Vec<Mismatch> {
    let f = parse_fixture(FIG_GH);
    check(f.entries.iter().filter(|e| e.x.abs() <= cap && e.y <= cap).map(|e| {
        let expected = parse_expr(&e.value, f.radicand).expect("fixture value");
        (
            format!("G_H^gf({},{})", e.x, e.y),
            expected,
            quadrant_gf_value((e.x, e.y)),
        )
    }))
}

fn branch_of(s: &Option<String>) -> Branch {
    match s.as_deref() {
        Some("other") => Branch::Other,
        _ => Branch::Principal,
    }
}

/// Vertex-branched antisymmetric Green's function with source (1,0), within
/// the given radius (squared distance bound on the base point).
pub fn check_sigma_cover(radius2: i64) -> Vec<Mismatch> {
    let f = parse_fixture(FIG_GSA10);
    check(
        f.entries
            .iter()
            .filter(|e| e.x * e.x + e.y * e.y <= radius2)
            .map(|e| {
                let expected = parse_expr(&e.value, f.radicand).expect("fixture value");
                (
                    format!("GsigmaA((1,0),({},{}),{:?})", e.x, e.y, e.branch),
                    expected,
                    g_sigma_a((1, 0), (e.x, e.y), Branch::Principal, branch_of(&e.branch)),
                )
            }),
    )
}

/// Face-branched antisymmetric Green's function with source (1,1)/2 (doubled
/// coordinates), within the given doubled radius squared.
pub fn check_xi_cover(radius2_doubled: i64) -> Vec<Mismatch> {
    let f = parse_fixture(FIG_G11FACE);
    check(
        f.entries
            .iter()
            .filter(|e| e.x * e.x + e.y * e.y <= radius2_doubled)
            .map(|e| {
                let expected = parse_expr(&e.value, f.radicand).expect("fixture value");
                (
                    format!("GxiA((1,1),({},{}),{:?})", e.x, e.y, e.branch),
                    expected,
                    g_xi_a((1, 1), (e.x, e.y), Branch::Principal, branch_of(&e.branch)),
                )
            }),
    )
}

/// Directed-edge probabilities near the conditioned trunk edge (full table).
pub fn check_trunk_table() -> Vec<Mismatch> {
    let f: EdgeFixture = serde_json::from_str(FIG1_TRUNK).expect("malformed fixture");
    check(f.entries.iter().map(|e| {
        let expected = parse_expr(&e.value, f.radicand).expect("fixture value");
        let dir = Dir::from_letter(&e.dir).expect("direction");
        let edge = TreeEdge::new((e.tail[0], e.tail[1]), dir);
        (
            format!("P(({},{}) -> {})", e.tail[0], e.tail[1], e.dir),
            expected,
            trunk_directed_edge_probability(edge),
        )
    }))
}

/// Triangular slit-plane values (the figure of the function branched around
/// a split edge coincides with the slit Green's function).
pub fn check_tri_slit(radius: i64) -> Vec<Mismatch> {
    let f = parse_fixture(FIG_TRI_EDGE);
    check(
        f.entries
            .iter()
            .filter(|e| e.x.abs() <= radius && e.y.abs() <= radius && (e.x - e.y).abs() <= radius)
            .map(|e| {
                let expected = parse_expr(&e.value, f.radicand).expect("fixture value");
                (
                    format!("G_D^tri({},{})", e.x, e.y),
                    expected,
                    tri_slit_green((e.x, e.y)),
                )
            }),
    )
}

/// Triangular face-branched values.
pub fn check_tri_face(radius: i64) -> Vec<Mismatch> {
    let f = parse_fixture(FIG_TRI_FACE);
    check(
        f.entries
            .iter()
            .filter(|e| e.x.abs() <= radius && e.y.abs() <= radius && (e.x - e.y).abs() <= radius)
            .map(|e| {
                let expected = parse_expr(&e.value, f.radicand).expect("fixture value");
                (
                    format!("Gface^tri({},{})", e.x, e.y),
                    expected,
                    tri_face_branched((e.x, e.y)),
                )
            }),
    )
}

/// The whole embedded regression suite; returns every mismatch.
pub fn run_all(gh_gf_cap: i64, tri_radius: i64) -> Vec<(String, Vec<Mismatch>)> {
    vec![
        ("potential".to_string(), check_potential()),
        ("half-plane fill".to_string(), check_gh_fill()),
        ("half-plane generating functions".to_string(), check_gh_generating_functions(gh_gf_cap)),
        ("vertex-branched cover".to_string(), check_sigma_cover(8)),
        ("face-branched cover".to_string(), check_xi_cover(32)),
        ("trunk directed edges".to_string(), check_trunk_table()),
        ("triangular slit".to_string(), check_tri_slit(tri_radius)),
        ("triangular face-branched".to_string(), check_tri_face(tri_radius)),
    ]
}
