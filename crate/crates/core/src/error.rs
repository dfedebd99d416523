use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants carry enough context for the CLI to print a single-line,
/// machine-parsable reason.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EneError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("{op}: ring {ring} is not a Q-algebra")]
    NotQAlgebra { op: &'static str, ring: String },

    #[error("{op}: constant term is not 1")]
    NotUnitSeries { op: &'static str },

    #[error("{op}: constant term is not invertible")]
    NonInvertibleConstant { op: &'static str },

    #[error("{op}: requested order {requested} exceeds available order {available}")]
    OrderTooLarge {
        op: &'static str,
        requested: usize,
        available: usize,
    },

    #[error("exponential coefficient F_{0} is not invertible")]
    NotInvertibleCoefficient(usize),

    #[error("universal polynomial Q_{p} has a non-integral coefficient {coeff}")]
    IntegralityViolation { p: usize, coeff: String },

    #[error("universal polynomial Q_{p} violates structure: {reason}")]
    StructureViolation { p: usize, reason: String },

    #[error("universal polynomial index {requested} exceeds cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("{0}: zero (or non-invertible) root")]
    ZeroRoot(&'static str),

    #[error("{0}: polynomial has no nonconstant term")]
    ZeroPolynomialTail(&'static str),

    #[error("{op}: algorithms disagree at coefficient {index}")]
    EngineMismatch { op: &'static str, index: usize },

    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{op}: {msg}")]
    InvalidArgument { op: &'static str, msg: String },

    #[error("value {value} is not in ring {ring}")]
    NotInRing { value: String, ring: String },

    #[error("io: {0}")]
    Io(String),
}

impl EneError {
    /// Process exit status used by the command-line tool: 2 for malformed
    /// input, 3 for a violated ring contract, 4 for an exceeded universal
    /// polynomial cap, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            EneError::Parse { .. } | EneError::InvalidArgument { .. } => 2,
            EneError::RingMismatch { .. }
            | EneError::NotQAlgebra { .. }
            | EneError::NotUnitSeries { .. }
            | EneError::NonInvertibleConstant { .. }
            | EneError::OrderTooLarge { .. }
            | EneError::NotInvertibleCoefficient(_)
            | EneError::ZeroRoot(_)
            | EneError::ZeroPolynomialTail(_)
            | EneError::NotInRing { .. } => 3,
            EneError::CapExceeded { .. } => 4,
            EneError::IntegralityViolation { .. }
            | EneError::StructureViolation { .. }
            | EneError::EngineMismatch { .. }
            | EneError::NonConvergence { .. }
            | EneError::Io(_) => 1,
        }
    }

    pub(crate) fn invalid(op: &'static str, msg: impl Into<String>) -> Self {
        EneError::InvalidArgument {
            op,
            msg: msg.into(),
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        EneError::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for EneError {
    fn from(e: std::io::Error) -> Self {
        EneError::Io(e.to_string())
    }
}

pub type Result<T, E = EneError> = std::result::Result<T, E>;
