use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error in {context}: {message}")]
    Domain {
        context: &'static str,
        message: String,
    },

    /// An iterative numerical procedure stopped short of its target accuracy.
    /// `achieved` carries the best error estimate reached.
    #[error("{context} did not converge: requested {requested:.3e}, achieved {achieved:.3e}")]
    Numerical {
        context: &'static str,
        requested: f64,
        achieved: f64,
    },

    /// Material configuration could not be read, parsed or validated.
    #[error("material config{}: {message}", path_suffix(.path))]
    Config {
        path: Option<PathBuf>,
        message: String,
    },

    #[error("unknown material '{name}' (searched {searched})")]
    UnknownMaterial { name: String, searched: String },

    /// A condition that valid inputs cannot trigger.
    #[error("internal error in {context}: {message}")]
    Internal {
        context: &'static str,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn path_suffix(path: &Option<PathBuf>) -> String {
    match path {
        Some(p) => format!(" {}", p.display()),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn domain(context: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            context,
            message: message.into(),
        }
    }

    pub(crate) fn internal(context: &'static str, message: impl Into<String>) -> Self {
        Error::Internal {
            context,
            message: message.into(),
        }
    }
}
