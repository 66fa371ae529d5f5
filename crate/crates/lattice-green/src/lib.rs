//! Exact lattice Green's functions and determinantal statistics.
//!
//! The core objects are the potential kernel of `Z^2`, the Green's function of
//! the slit plane and of branched double covers (vertex- and face-branched),
//! inverse Kasteleyn matrices assembled from them, and the local statistics
//! they determine: spanning-tree edge processes near a conditioned trunk edge,
//! dimer models with a monomer, triple points, and the triangular-lattice
//! analogues. All closed-form values are exact elements of
//! `Q[sqrt(d)] + (1/pi) Q[sqrt(d)]` for `d` in {2, 3}.

pub mod exact;

pub use exact::{ComplexElem, ExactError, ExactResult, PiPoly, Rat, RingElem, Series};
pub mod plane;
pub mod slit;
pub mod branched;
pub mod kasteleyn;
pub mod trunk;
pub mod tripod;
pub mod triangular;
pub mod oracle;
pub mod fixtures;
pub mod cli;
