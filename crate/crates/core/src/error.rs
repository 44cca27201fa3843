use thiserror::Error;

/// Errors shared across the compiler, simulators and verification harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("state of {qubits} qubits exceeds the capacity cap of {max}")]
    Capacity { qubits: usize, max: usize },

    #[error("dense Fock oracle capped at {max} modes, got {modes}")]
    OracleCap { modes: usize, max: usize },

    #[error("mode index {index} out of range for {modes} modes")]
    IndexOutOfRange { index: usize, modes: usize },

    #[error("matrix is not antisymmetric within tolerance")]
    NotAntisymmetric,

    #[error("matrix is not special orthogonal (orthogonality or det +1 failed)")]
    NotSpecialOrthogonal,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("bitstring leaves the coded pair subspace at pair {pair}")]
    SubspaceViolation { pair: usize },

    #[error("leakage {leakage} outside the coded subspace exceeds {threshold}")]
    Leakage { leakage: f64, threshold: f64 },

    #[error("malformed input: {0}")]
    Schema(String),
}

pub type Result<V> = std::result::Result<V, Error>;
