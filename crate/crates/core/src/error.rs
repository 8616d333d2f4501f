use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },
    #[error("operation `{op}` is not supported over {ring}")]
    UnsupportedRing { op: &'static str, ring: String },
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("constant term must be nonzero")]
    ZeroConstantTerm,
    #[error("split parts {0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("input exceeds the supported scale: {0}")]
    ScaleExceeded(String),
    #[error("elements do not generate the unit ideal")]
    NotUnimodular,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("row does not generate the principal ideal of the requested determinant")]
    NotPrincipal,
    #[error("{0} is not idempotent")]
    NotIdempotent(String),
    #[error("{0} is not in the ideal generated by the row")]
    NotInIdeal(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Stable machine-readable code, used by the CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DescriptorMismatch { .. } => "DescriptorMismatch",
            Error::UnsupportedRing { .. } => "UnsupportedRing",
            Error::InvalidDescriptor(_) => "InvalidDescriptor",
            Error::NotDivisible { .. } => "NotDivisible",
            Error::ZeroElement => "ZeroElement",
            Error::ZeroConstantTerm => "ZeroConstantTerm",
            Error::NotCoprime(..) => "NotCoprime",
            Error::ScaleExceeded(_) => "ScaleExceeded",
            Error::NotUnimodular => "NotUnimodular",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::NotPrincipal => "NotPrincipal",
            Error::NotIdempotent(_) => "NotIdempotent",
            Error::NotInIdeal(_) => "NotInIdeal",
            Error::Shape(_) => "ShapeMismatch",
            Error::Parse { .. } => "ParseError",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::InvalidDescriptor(_))
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
