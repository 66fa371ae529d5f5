//! Dimer probabilities near a monomer fixed at the origin.

use lattice_green::trunk::monomer_dimer_probability;

fn main() {
    println!("horizontal dimer probabilities on the axis (doubled coordinates):");
    for d in [2i64, 4, 8, 12, 20] {
        let p = monomer_dimer_probability((d + 1, 0), (d, 0)).unwrap();
        println!("  dimer ({},0)-({},0): {} = {:.6}", d, d + 1, p.render(), p.to_f64());
    }
    // partition of unity around a white vertex next to the monomer
    let mut total = lattice_green::exact::RingElem::zero(2);
    for b in [(2i64, 0i64), (1, 1), (1, -1)] {
        total = total.add(&monomer_dimer_probability(b, (1, 0)).unwrap()).unwrap();
    }
    println!("sum of the dimers covering (1,0): {}", total.render());
}
