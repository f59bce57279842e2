use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input falls outside the domain where a quantity is defined.
    #[error("{quantity}: {reason}")]
    Domain {
        quantity: &'static str,
        reason: String,
    },

    #[error("quadrature for {quantity} did not converge: estimated error {achieved:.3e} exceeds tolerance {tolerance:.3e}")]
    Quadrature {
        quantity: &'static str,
        achieved: f64,
        tolerance: f64,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed sweep csv: {reason}")]
    Csv { path: PathBuf, reason: String },
}

impl Error {
    pub(crate) fn domain(quantity: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            quantity,
            reason: reason.into(),
        }
    }

    /// Rename the quantity of a domain error so callers can see where it originated.
    pub(crate) fn within(self, quantity: &'static str) -> Self {
        match self {
            Error::Domain { quantity: inner, reason } => Error::Domain {
                quantity,
                reason: format!("{inner}: {reason}"),
            },
            Error::Quadrature { achieved, tolerance, .. } => Error::Quadrature {
                quantity,
                achieved,
                tolerance,
            },
            other => other,
        }
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. } | Error::Csv { .. })
    }
}
