use thiserror::Error;

/// Error type shared by every module in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter fell outside its documented domain.
    #[error("invalid {name}: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// A numeric guard tripped during evaluation (overflow, lost
    /// convergence, out-of-range intermediate).
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// An error annotated with the scan point that produced it.
    #[error("at j={j}, theta={theta:.6e}, phi={phi:.6e}: {source}")]
    AtGridPoint {
        j: usize,
        theta: f64,
        phi: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            message: message.into(),
        }
    }

    pub(crate) fn at_grid_point(self, j: usize, theta: f64, phi: f64) -> Self {
        Error::AtGridPoint {
            j,
            theta,
            phi,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
