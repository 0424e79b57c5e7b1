use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("the zero polynomial is not a binary form")]
    ZeroForm,
    #[error("operation needs exact rational coefficients")]
    NotExact,
    #[error("operation needs integer coefficients")]
    NotInteger,
    #[error("linear map is singular (determinant 0)")]
    SingularMap,
    #[error("root refinement did not reach tolerance {tol:e} (reconstruction error {achieved:e})")]
    NoConvergence { tol: f64, achieved: f64 },
    #[error("argument {0} is outside the domain (must be > 0)")]
    DomainError(f64),
    #[error("degree {0} is below 3; the region |F| <= 1 has infinite area")]
    DegreeTooLow(usize),
    #[error("discriminant vanishes; the region |F| <= 1 has infinite area")]
    DiscriminantZero,
    #[error("real root of multiplicity > 1 near angle {0}")]
    DegenerateRoot(f64),
    #[error("quadrature error estimate {achieved:e} did not reach {tol:e} within the evaluation budget")]
    QuadratureFailure { tol: f64, achieved: f64 },
    #[error("form has a real projective root, so it is not definite")]
    NotDefinite,
    #[error("root angles {0} and {1} coincide")]
    DegenerateAngles(f64, f64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    /// Stable machine-readable name, used in CLI error payloads.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::ZeroForm => "ZeroForm",
            Error::NotExact => "NotExact",
            Error::NotInteger => "NotInteger",
            Error::SingularMap => "SingularMap",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::DomainError(_) => "DomainError",
            Error::DegreeTooLow(_) => "DegreeTooLow",
            Error::DiscriminantZero => "DiscriminantZero",
            Error::DegenerateRoot(_) => "DegenerateRoot",
            Error::QuadratureFailure { .. } => "QuadratureFailure",
            Error::NotDefinite => "NotDefinite",
            Error::DegenerateAngles(..) => "DegenerateAngles",
            Error::Parse { .. } => "ParseError",
        }
    }
}
