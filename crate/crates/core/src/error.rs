use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Cover data violates a structural invariant.
    #[error("invalid cover data: {0}")]
    InvalidCover(#[from] InvalidCoverData),

    /// A bounded search refused to run because it would be too large.
    #[error("effort exceeded: {0}")]
    EffortExceeded(String),

    /// Malformed cover file.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Reasons a set of branch components does not define an abelian cover.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidCoverData {
    #[error("component {component} has the zero label")]
    ZeroLabel { component: usize },

    #[error("component {component} has degree {degree}; degrees must be at least 1")]
    NonPositiveDegree { component: usize, degree: i64 },

    #[error(
        "component {component}: coordinate {coordinate} of label is out of range for the group"
    )]
    LabelOutOfRange { component: usize, coordinate: usize },

    #[error("component {component}: label has {found} coordinates, group has {expected}")]
    LabelLength {
        component: usize,
        expected: usize,
        found: usize,
    },

    /// `n_i` does not divide `sum_alpha alpha_i x_alpha`.
    #[error(
        "coordinate {index}: weighted branch degree leaves residue {residue} modulo {modulus}"
    )]
    Divisibility {
        index: usize,
        modulus: u32,
        residue: i64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
