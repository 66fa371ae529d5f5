//! Green's functions of the branched double covers: the zipper function at
//! arbitrary pairs and the antisymmetric cover functions.

use lattice_green::branched::{g_sigma_a, g_slit, g_xi_a, gz, Branch};

fn main() {
    println!("zipper Green's function:");
    println!("  G_Z((0,0),(0,0))  = {}", gz((0, 0), (0, 0)).unwrap());
    println!("  G_Z((1,0),(1,0))  = {}", gz((1, 0), (1, 0)).unwrap());
    println!("  G_Z((2,1),(-1,3)) = {}", gz((2, 1), (-1, 3)).unwrap());
    let p = Branch::Principal;
    println!("\nvertex-branched antisymmetric values (source (1,0)):");
    for w in [(1i64, 0i64), (0, 1), (2, 0), (1, -1)] {
        println!("  G^A((1,0),{w:?}) = {}", g_sigma_a((1, 0), w, p, p).unwrap());
    }
    println!("\nface-branched (doubled coordinates, source (1,1)):");
    for w in [(1i64, 1i64), (1, -1), (3, 1)] {
        println!("  G^A((1,1),{w:?}) = {}", g_xi_a((1, 1), w, p, p).unwrap());
    }
    println!("\nslit-plane value G_D0((1,1),(1,1)) = {}", g_slit((1, 1), (1, 1)).unwrap());
}
