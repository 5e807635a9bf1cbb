//! Crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("gate {gate} expects {expected} distinct target(s), got {got:?}")]
    BadTargets {
        gate: &'static str,
        expected: usize,
        got: Vec<usize>,
    },

    #[error("qubit index {0} out of range for {1} qubits")]
    QubitOutOfRange(usize, usize),

    #[error("operator is not Hermitian (phase exponent {0} is odd)")]
    NonHermitian(u8),

    #[error("measurement operator is the identity")]
    TrivialMeasurement,

    #[error("measurement operator commutes with every generator; no anticommuting row")]
    NoAnticommutingRow,

    #[error("a non-Clifford gate was already applied; only one is supported per run")]
    SecondNonClifford,

    #[error("state has zero trace; it was annihilated by a projection")]
    ZeroTrace,

    #[error("post-selected outcome {bit} of `{label}` has probability {probability:.3e}; run rejected")]
    Rejected {
        label: String,
        bit: u8,
        probability: f64,
    },

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("{n} qubits exceeds the dense simulation limit of {limit}")]
    DenseLimit { n: usize, limit: usize },

    #[error("mixed states (fewer generators than qubits) are not supported")]
    MixedState,

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unsupported code distance {0}; expected d >= 2")]
    UnsupportedDistance(usize),

    #[error("enumeration would exceed {max} branches ({measurements} free measurements)")]
    TooManyBranches { measurements: usize, max: usize },

    #[error("{0}")]
    Invalid(String),
}
