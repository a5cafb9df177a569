use thiserror::Error;

/// Errors raised by every layer of the library.
///
/// The variants split into three families that the CLI maps to distinct exit
/// codes: input problems (parse, domain), mathematical obstructions (infinite
/// colength, non-isolated singularities) and resource limits (caps).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("generator {index} is the zero polynomial")]
    ZeroGenerator { index: usize },
    #[error("negative exponent at line {line}, column {column}")]
    NegativeExponent { line: usize, column: usize },
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("ideal does not have finite colength: {0}")]
    InfiniteColength(String),
    #[error("the unit ideal has no mixed multiplicities")]
    UnitIdeal,
    #[error("singular linear change of coordinates")]
    SingularMatrix,
    #[error("degree cap {cap} exceeded (reached degree {degree})")]
    DegreeCapExceeded { cap: u32, degree: u32 },
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("ideal is not monomial")]
    NotMonomial,
    #[error("containment fails: {0}")]
    ContainmentFails(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Obstructions that come from the mathematics of the input rather than
    /// from its syntax or from resource limits.
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::InfiniteColength(_) | Error::UnitIdeal | Error::SingularMatrix
        )
    }

    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::DegreeCapExceeded { .. } | Error::CapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
