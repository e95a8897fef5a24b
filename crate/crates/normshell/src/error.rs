use std::fmt;

/// Errors shared across the library.
#[derive(Debug)]
pub enum Error {
    /// Vector length does not match what an operation expects (e.g. weights).
    DimensionMismatch { expected: usize, got: usize },
    /// The ambient space must have dimension at least 2.
    DimensionTooSmall { dim: usize },
    /// A coordinate or parameter is NaN or infinite.
    NonFinite,
    /// Radial projection of the zero vector onto a sphere of positive radius.
    ZeroVector,
    /// A radius list must contain at least one radius.
    EmptyRadiusList,
    NegativeRadius(f64),
    InvalidShell { inner: f64, outer: f64 },
    /// The target vector's norm lies outside the shell of the given radii.
    NotInShell { norm: f64, inner: f64, outer: f64 },
    /// A two-sphere split was requested outside its feasible range.
    Infeasible { norm: f64, lo: f64, hi: f64 },
    /// Bisection exhausted its iteration budget before reaching tolerance.
    ToleranceNotReached { residual: f64 },
    /// An error raised at a specific step of the inductive decomposition.
    Step { index: usize, source: Box<Error> },
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::DimensionTooSmall { dim } => {
                write!(f, "dimension must be at least 2 (got {dim})")
            }
            Error::NonFinite => write!(f, "non-finite value encountered"),
            Error::ZeroVector => {
                write!(f, "cannot project the zero vector onto a sphere of positive radius")
            }
            Error::EmptyRadiusList => write!(f, "radius list must be nonempty"),
            Error::NegativeRadius(r) => write!(f, "radius must be nonnegative (got {r})"),
            Error::InvalidShell { inner, outer } => {
                write!(f, "invalid shell: inner {inner} > outer {outer}")
            }
            Error::NotInShell { norm, inner, outer } => {
                write!(f, "target norm {norm} lies outside the shell [{inner}, {outer}]")
            }
            Error::Infeasible { norm, lo, hi } => {
                write!(f, "infeasible split: norm {norm} outside [{lo}, {hi}]")
            }
            Error::ToleranceNotReached { residual } => {
                write!(f, "bisection iteration cap reached, residual {residual}")
            }
            Error::Step { index, source } => write!(f, "at decomposition step {index}: {source}"),
            Error::InvalidArgument(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Step { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl Error {
    /// True for errors that mean "the request was well-formed but has no
    /// solution", as opposed to misuse.
    pub fn is_infeasible(&self) -> bool {
        match self {
            Error::NotInShell { .. }
            | Error::Infeasible { .. }
            | Error::DimensionTooSmall { .. } => true,
            Error::Step { source, .. } => source.is_infeasible(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
