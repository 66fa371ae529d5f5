//! Statistics of a conditioned triple point of the spanning tree.

use lattice_green::tripod::{tripod_statistics, tripod_table};

fn main() {
    let s = tripod_statistics().unwrap();
    println!("directed edge probability   = {}", s.edge_probability.render());
    println!("P(degree 4)                 = {}", s.degree4.render());
    println!("P(degree 3)                 = {}", s.degree3.render());
    println!("expected degree             = {}", s.expected_degree.render());
    let table = tripod_table(-1, 1, -1, 1).unwrap();
    println!("\ndirected-edge probabilities near the tripod:");
    for (t, d, p) in table.iter().take(8) {
        println!("  {t:?} {d:?}: {} = {:.6}", p.render(), p.to_f64());
    }
}
