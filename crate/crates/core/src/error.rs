use thiserror::Error;

/// Errors raised by ring construction and the correspondence calculus.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate pairing between degrees {degree} and {complement}")]
    DegeneratePairing { degree: u32, complement: u32 },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("degree {degree} out of range 0..={top}")]
    DegreeOutOfRange { degree: u32, top: u32 },

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("class expression is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("invalid space specification: {0}")]
    InvalidSpec(String),

    #[error("ambient pairing degenerates below the middle degree (degree {degree})")]
    NonLefschetzRange { degree: u32 },

    #[error("malformed pushforward expression: {0}")]
    MalformedPushforward(String),

    #[error("odd degree {degree} at or below the cutoff has rank {rank}")]
    OddRankObstruction { degree: u32, rank: usize },

    #[error("correspondence at index {index} is not idempotent")]
    NotIdempotent { index: u32 },

    #[error("projector set is incomplete: {0}")]
    IncompleteInput(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("map is not a ring homomorphism: {0}")]
    NotRingMap(String),

    #[error("unsupported group action: {0}")]
    UnsupportedAction(String),

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
