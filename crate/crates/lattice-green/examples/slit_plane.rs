//! The half-plane slit Green's function: boundary series, exact fill, and the
//! quadrant generating functions as an independent second route.

use lattice_green::slit::{c_series, gh, quadrant_gf_value, v_series};

fn main() {
    let v = v_series(8);
    println!("row-0 voltages V(z): {:?}", (0..8).map(|k| v.coeff(k).unwrap().render()).collect::<Vec<_>>());
    let c = c_series(8);
    println!("boundary currents C(z) in 1/z: {:?}", (0..8).map(|k| c.coeff(k).unwrap().render()).collect::<Vec<_>>());
    println!("\nG_H by fill vs generating functions:");
    for (x, y) in [(1i64, 1i64), (-1, 1), (3, 1), (-2, 2), (2, 2), (0, 4)] {
        let a = gh((x, y));
        let b = quadrant_gf_value((x, y)).unwrap();
        assert_eq!(a, b);
        println!("  G_H({x},{y}) = {}", a.render());
    }
}
