use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside its admissible range.
    #[error("invalid {name} = {value}: expected {expected}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error(
        "closed-form solution is singular at Pr = 1 (got Pr = {pr}); \
         use the finite-difference solver for this value"
    )]
    SingularPrandtl { pr: f64 },

    #[error(
        "closed-form solution is singular at Sc = 1 (got Sc = {sc}); \
         use the finite-difference solver for this value"
    )]
    SingularSchmidt { sc: f64 },

    #[error("similarity variable undefined for t = {t} (fields vanish for t <= 0)")]
    NonPositiveTime { t: f64 },

    #[error("finite-difference field {field} became non-finite at step {step} (t = {time})")]
    NonFiniteField {
        field: &'static str,
        step: usize,
        time: f64,
    },

    #[error("point (Y = {y}, t = {t}) lies outside the computed domain")]
    OutOfDomain { y: f64, t: f64 },

    #[error("explicit scheme unstable: dt = {dt} exceeds {limit} (theta = {theta})")]
    Unstable { dt: f64, limit: f64, theta: f64 },

    /// Bad run configuration, naming the offending key.
    #[error("config key `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    /// Short machine-readable identifier used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::SingularPrandtl { .. } => "singular_prandtl",
            Error::SingularSchmidt { .. } => "singular_schmidt",
            Error::NonPositiveTime { .. } => "non_positive_time",
            Error::NonFiniteField { .. } => "non_finite_field",
            Error::OutOfDomain { .. } => "out_of_domain",
            Error::Unstable { .. } => "unstable",
            Error::Config { .. } => "config",
            Error::Io { .. } => "io",
            Error::Invalid(_) => "invalid",
        }
    }
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: impl std::fmt::Display) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
