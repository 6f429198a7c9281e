use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precision of {0} bits is below the minimum of 64")]
    InvalidPrecision(u32),

    #[error("invalid quadrature scheme: {0}")]
    InvalidScheme(String),

    #[error("integrand `{id}` did not converge by level {level} (last difference {estimate})")]
    NonConvergence {
        id: String,
        level: u32,
        estimate: String,
    },

    #[error("integrand `{id}` is not finite at {point}")]
    Domain { id: String, point: String },

    #[error("series precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("closed form leaves the constant basis: {0}")]
    Basis(String),

    #[error("value is not finite: {0}")]
    NonFinite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable short name used in diagnostics and by the C API.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPrecision(_) => "INVALID_PRECISION",
            Error::InvalidScheme(_) => "INVALID_SCHEME",
            Error::NonConvergence { .. } => "NONCONVERGENCE",
            Error::Domain { .. } => "DOMAIN_ERROR",
            Error::PreconditionViolation(_) => "PRECONDITION_VIOLATION",
            Error::Catalog(_) => "CATALOG_ERROR",
            Error::Basis(_) => "BASIS_ERROR",
            Error::NonFinite(_) => "NON_FINITE",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
        }
    }
}
