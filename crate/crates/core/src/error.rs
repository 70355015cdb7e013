use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("state is not normalized: norm^2 = {0}")]
    NotNormalized(f64),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("singular boundary system at interval {m} (|det| = {det:e}, tau = {tau}, n_duty = {n_duty})")]
    NumericalDegeneracy { m: usize, det: f64, tau: f64, n_duty: u32 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, err: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
