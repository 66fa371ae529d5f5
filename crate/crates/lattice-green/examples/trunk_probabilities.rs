//! Local statistics of the spanning tree near a conditioned trunk edge.

use lattice_green::trunk::{
    straight_run_probability, trunk_degree_distribution, trunk_directed_edge_probability,
    trunk_table, Dir, TreeEdge,
};

fn main() {
    println!("directed-edge probabilities near the trunk edge:");
    for (t, d) in [((0, 0), Dir::E), ((0, 0), Dir::N), ((1, 0), Dir::W), ((1, 1), Dir::S)] {
        let p = trunk_directed_edge_probability(TreeEdge::new(t, d)).unwrap();
        println!("  {t:?} {d:?}: {}", p.render());
    }
    println!("\ndegree distribution of a trunk vertex:");
    for (deg, p) in trunk_degree_distribution().unwrap() {
        println!("  P(degree {deg}) = {}", p.render());
    }
    println!("\nstraight runs are geometric:");
    for k in 0..=4 {
        println!("  P(straight x{k}) = {}", straight_run_probability(k).unwrap().render());
    }
    let window = trunk_table(-1, 1, 0, 1).unwrap();
    println!("\n{} directed edges in the window [-1,1]x[0,1]", window.len());
}
