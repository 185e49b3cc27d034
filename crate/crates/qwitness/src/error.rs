use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension {0} exceeds the 8x8 cap")]
    DimensionOverflow(usize),

    #[error("dimension {0} is not a supported qubit-register size (2, 4 or 8)")]
    UnsupportedDimension(usize),

    #[error("operator is not Hermitian (defect {0:.3e})")]
    NotHermitian(f64),

    #[error("not a valid density state: {0}")]
    InvalidDensity(String),

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),

    #[error("protocol violation: {0}")]
    ProtocolViolation(String),

    #[error("channel direction mismatch: expected {expected}, got {actual}")]
    WrongDirection { expected: String, actual: String },

    #[error("protocol stage mismatch: expected {expected}, got {actual}")]
    WrongStage { expected: String, actual: String },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("missing correlator record: {0}")]
    MissingRecord(String),

    #[error("invalid epistemic state: {0}")]
    InvalidEpistemicState(String),
}

pub type Result<T> = std::result::Result<T, Error>;
