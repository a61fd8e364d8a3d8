//! Exact partition functions for inhomogeneous q-state spin models whose edge
//! energies depend only on the spin difference `(s_head - s_tail) mod q`.
//!
//! The interaction pattern of a model is encoded by the cut code of the
//! oriented graph, `C = rowspace(B) ⊆ Z_q^E`, and the partition function is
//! `q` times the sum over codewords of the product of per-edge Boltzmann
//! weights. On top of that identity the crate provides
//!
//! * brute-force, codeword-overlap and junction-tree contraction evaluators
//!   ([`engines`]),
//! * closed forms for trees and cycles,
//! * planar Fourier duality and the stabilizer symmetry group acting on weight
//!   tables ([`transforms`]).
//!
//! Values are carried as [`ScaledValue`]s (complex mantissa plus a base-2
//! exponent) so that large lattices neither overflow nor underflow.

pub mod code;
pub mod engines;
mod error;
pub mod graph;
pub mod model;
mod phase;
mod scaled;
pub mod transforms;

pub use code::{CodeKind, CodeOverZq, StabilizerPair, ZqVector};
pub use engines::{Engine, EvalReport, Limits, Method};
pub use error::{Error, Result};
pub use graph::{
    decomposition::{DecompositionStrategy, TreeDecomposition},
    End, EdgeEnd, IncidenceMatrix, OrientedGraph,
};
pub use model::{InteractionTable, WeightTable};
pub use phase::root_of_unity;
pub use scaled::ScaledValue;
pub use transforms::{DualityCertificate, SymmetryElement};
