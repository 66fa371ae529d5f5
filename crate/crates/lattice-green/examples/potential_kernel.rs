//! Print the exact potential kernel of the square lattice on a small window
//! and check its defining properties.

use lattice_green::exact::rat_i;
use lattice_green::plane::{potential, transfer_impedance, ust_cylinder_probability};

fn main() {
    println!("potential kernel A(x, y), exact and numeric:");
    for y in (-3..=3).rev() {
        for x in -3..=3 {
            print!("{:>22}", potential((x, y)).render());
        }
        println!();
    }
    // spanning-tree edge process: single-edge probability is 1/2
    let e = ((0, 0), (1, 0));
    println!("\ntransfer impedance T(e,e) = {}", transfer_impedance(e, e).unwrap());
    let pair = ust_cylinder_probability(&[((0, 0), (1, 0)), ((0, 0), (0, 1))]).unwrap();
    println!("P(two perpendicular edges) = {} = {:.6}", pair.render(), pair.to_f64());
    // harmonicity at the origin: Laplacian equals -1
    let lap = potential((0, 0))
        .scale(&rat_i(4))
        .sub(&potential((1, 0)))
        .unwrap()
        .sub(&potential((-1, 0)))
        .unwrap()
        .sub(&potential((0, 1)))
        .unwrap()
        .sub(&potential((0, -1)))
        .unwrap();
    println!("Laplacian of A at the origin: {lap}");
}
