use thiserror::Error;

/// Errors produced by state construction, operator application and analysis.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operator arity {arity} does not match {targets} target qubits")]
    ArityMismatch { arity: usize, targets: usize },

    #[error("qubit {qubit} is out of range for a {num_qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit {0} appears more than once")]
    DuplicateQubit(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm squared = {0})")]
    NotNormalized(f64),

    #[error("operator is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expected {expected} operators in the base set, found {found}")]
    WrongCardinality { expected: usize, found: usize },

    #[error("teleportation capacity {capacity} is below the requested {requested} payload qubits")]
    CapacityInsufficient { capacity: usize, requested: usize },

    #[error("only {available} mutually orthogonal encodings exist, {requested} requested")]
    CodebookTooSmall { available: usize, requested: usize },

    #[error("message index {index} out of range for a codebook of {size}")]
    MessageOutOfRange { index: usize, size: usize },

    #[error("too many qubits: {num_qubits} (limit {limit})")]
    TooManyQubits { num_qubits: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
