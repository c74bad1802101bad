use thiserror::Error;

use crate::torsor::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("vector is not a unit grade-1 element: {0}")]
    NotUnit(String),

    #[error("matrix is not orthogonal")]
    NotOrthogonal,

    #[error("matrix has determinant -1; only rotations can be lifted")]
    Orientation,

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("invalid spin element: {0}")]
    InvalidSpinElement(String),

    #[error("element has odd blades and does not preserve chirality")]
    ChiralityViolation,

    #[error("spin element {0} has irrational coefficients; its matrix is not defined over Q")]
    IrrationalElement(String),

    #[error("element outside the supported domain: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid complex: {0}")]
    Validation(String),

    #[error("degree {degree} out of range (complex has top dimension {top})")]
    DegreeOutOfRange { degree: usize, top: usize },

    #[error("cochain has a component outside the image of the interval cross product: {0}")]
    Residue(String),

    #[error("table is not an affine difference function: {0}")]
    InvalidDifference(Violation),

    #[error("action is not free and transitive: {0}")]
    InvalidAction(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("criterion not applicable: {0}")]
    Gate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
