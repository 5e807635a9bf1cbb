//! Simulation of Clifford circuits containing a single non-Clifford Z rotation.
//!
//! A Clifford-only circuit keeps a density matrix in the familiar generator
//! form ρ = Π_j (I + g_j) / 2^r. Injecting one R_Z(θ) (canonically a T gate)
//! turns the state into a small superposition of stabilizer terms,
//!
//! ρ′ = Σ_{i,k} c_{i,k} · P_{i,k} · Π_j (I + (−1)^{ε_{j,k}} g_j) / 2^r ,
//!
//! which this crate tracks exactly: one shared unsigned generator tableau,
//! ν per-branch sign vectors ε, and a ν×ν coefficient matrix of complex
//! weights paired with Pauli operators. Clifford gates, Pauli-product
//! measurements (with post-selection) and single Pauli error insertions all
//! have closed-form update rules on this representation, so circuits such as
//! T-gate teleportation and magic state injection on the rotated surface code
//! can be followed analytically at any distance.
//!
//! The crate ships:
//!
//! - [`pauli`]: phased n-qubit Pauli operators over bit-packed GF(2) vectors;
//! - [`tableau`]: the shared generator tableau with destabilizer-accelerated
//!   membership queries;
//! - [`extended`]: the decomposed density matrix and its update rules;
//! - [`oracle`]: a brute-force dense state-vector / density-matrix simulator
//!   used for differential testing;
//! - [`circuit`]: a line-oriented circuit file format;
//! - [`run`]: an executor that drives [`extended::ExtendedState`] through a
//!   [`circuit::Circuit`] in enumerate / post-select / sampling modes;
//! - [`protocols`]: builders and checkers for T-gate teleportation and
//!   surface-code magic state injection;
//! - [`report`]: machine-readable run reports for the CLI.

pub mod bits;
pub mod circuit;
pub mod dense;
pub mod error;
pub mod extended;
pub mod gf2;
pub mod oracle;
pub mod pauli;
pub mod protocols;
pub mod report;
pub mod run;
pub mod tableau;
pub mod target;

pub use circuit::{Angle, Circuit, Instruction};
pub use error::{Error, Result};
pub use extended::{decompose_unitary, CoefficientMatrix, ExtendedState, OutcomeRecord};
pub use pauli::{CliffordGate, InitBasis, PauliKind, PhasedPauli, Sign};
pub use tableau::{BranchSigns, GeneratorTableau};
pub use target::TargetState;
