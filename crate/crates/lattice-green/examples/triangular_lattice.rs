//! Triangular-lattice tables: axis Green differences, slit voltages, the
//! face-branched Green's function, and the straight-runs constant.

use lattice_green::triangular::{
    tri_delta_plus, tri_face_branched, tri_runs_constant, tri_slit_voltage,
};

fn main() {
    let d = tri_delta_plus(8).unwrap();
    println!("axis differences:");
    for k in [1i64, 3, 5] {
        println!("  u^{k}: {}", d.coeff(k).unwrap().render());
    }
    let v = tri_slit_voltage(6).unwrap();
    println!("slit voltages:");
    for k in [0i64, 2, 4] {
        println!("  u^{k}: {}", v.coeff(k).unwrap().render());
    }
    println!("face-branched values:");
    for p in [(0i64, 0i64), (1, 0), (-1, 0), (2, 1)] {
        println!("  {p:?}: {}", tri_face_branched(p).unwrap().render());
    }
    println!("runs constant cubed: {}", tri_runs_constant(3).unwrap().render());
}
