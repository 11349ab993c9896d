use crate::lattice::Point;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("cannot parse lattice spec {spec:?}: {reason}")]
    ParseLattice { spec: String, reason: String },

    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {index} has value {value}, outside chain of length {length}")]
    CoordinateOutOfRange { index: usize, value: u32, length: u32 },

    #[error("lattice has {points} points, above the cap of {cap}")]
    LatticeTooLarge { points: u128, cap: u64 },

    #[error("operation requires a Boolean lattice (all chain lengths 2)")]
    NotBoolean,

    #[error("subset element {element} outside 1..={n}")]
    SubsetElementOutOfRange { element: usize, n: usize },

    #[error("duplicate point {0}")]
    DuplicatePoint(Point),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("points {0} and {1} are comparable")]
    NotAntichain(Point, Point),

    #[error("set is not strongly cancellative")]
    NotStronglyCancellative,

    #[error("set is not recovering")]
    NotRecovering,

    #[error("seed set does not satisfy the {0} property")]
    SeedViolatesProperty(crate::verifier::Property),

    #[error("point {0} is not in the set")]
    PointNotInSet(Point),

    #[error("set has {found} points, at least {needed} required")]
    SetTooSmall { needed: usize, found: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("value {0} outside [0, 1]")]
    OutOfUnitInterval(f64),

    #[error("joint outcomes have differing lengths")]
    RaggedTuples,

    #[error("search returned a set that fails re-verification")]
    VerificationFailed,

    #[error("malformed set file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
