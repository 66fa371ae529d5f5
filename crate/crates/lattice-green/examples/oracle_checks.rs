//! Independent verification: finite-grid solves, quadrature, and Wilson
//! sampling cross-check the closed forms.

use lattice_green::oracle::quadrature::QuadLattice;
use lattice_green::oracle::{
    certified_green_solve, exact_green_solve, quadrature_green, tri_axis_difference,
    wilson_sample, FiniteProblem, StripSpec,
};
use lattice_green::trunk::Dir;

fn main() {
    let p = FiniteProblem::square_box(0);
    println!("3x3 box center Green value: {}", exact_green_solve(&p, (0, 0), (0, 0)).unwrap());
    let p = FiniteProblem::square_box(24).with_zipper();
    let g = certified_green_solve(&p, (0, 0), (0, 0)).unwrap();
    println!("zipper diagonal at radius 24: {:.6} (limit 0.5)", g.to_f64());
    println!("quadrature G(1,1) = {:.9} (closed form -1/pi = {:.9})",
        quadrature_green(QuadLattice::Square, (1, 1), 1e-10), -1.0 / std::f64::consts::PI);
    println!("triangular axis difference at 0: {:.9} (closed form 1/6)", tri_axis_difference(0, 1e-10));
    let spec = StripSpec { rows: 15, cols: 31 };
    let run = wilson_sample(&spec, &[((0, 0), Dir::E)], 1, 500).unwrap();
    println!(
        "Wilson straight estimate: {:.4} +- {:.4} (exact value {:.4})",
        run.estimates[0].mean, run.estimates[0].std_err, 2f64.sqrt() - 1.0
    );
}
