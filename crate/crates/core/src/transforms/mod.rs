//! Maps between weight tables that preserve the partition function: Fourier
//! duality onto the planar dual, and the stabilizer symmetries of the cut
//! code.

mod duality;
mod symmetry;

pub use duality::{dual_model, fourier_dual_weights, potts_dual_coupling, DualityCertificate, Exponent, GraphSize};
pub use symmetry::{apply_symmetry, symmetry_group_sample, vertex_flip, SymmetryElement};
