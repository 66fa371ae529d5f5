//! Independent brute-force verification: exact finite-grid linear algebra for
//! the Laplacian and Kasteleyn variants, certified finite solves at large
//! radius, Wilson's-algorithm spanning-tree sampling with conditioning, and
//! high-precision numeric quadrature of the integral formulas.

pub mod finite;
pub mod kasteleyn_finite;
pub mod quadrature;
pub mod wilson;

pub use finite::{certified_green_solve, exact_green_solve, BoundaryKind, FiniteProblem, LatticeKind};
pub use quadrature::{quadrature_green, tri_axis_difference};
pub use wilson::{wilson_sample, StripSpec, WilsonEstimate};
