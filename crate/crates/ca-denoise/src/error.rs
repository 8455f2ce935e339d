//! Crate-wide error type.

use std::path::PathBuf;

/// Errors surfaced by image construction, file I/O and the metric functions.
///
/// Index-out-of-range pixel access is a contract violation and panics instead
/// of returning a variant of this type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Width or height of zero.
    #[error("image dimensions must be at least 1x1")]
    EmptyImage,

    /// Pixel buffer length does not match `width * height`.
    #[error("pixel buffer holds {len} bytes, expected {width}x{height} = {expected}")]
    PixelCountMismatch {
        width: usize,
        height: usize,
        len: usize,
        expected: usize,
    },

    /// Two images that must share dimensions do not.
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    /// A parameter outside its documented domain (usage error).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Image data that cannot be decoded under the supported formats.
    #[error("malformed image{}: {msg}", path_suffix(.path))]
    MalformedImage { path: Option<PathBuf>, msg: String },

    /// A file format the toolkit deliberately does not handle.
    #[error("unsupported format{}: {msg}", path_suffix(.path))]
    UnsupportedFormat { path: Option<PathBuf>, msg: String },

    /// Underlying filesystem failure.
    #[error("I/O error{}: {source}", path_suffix(.path))]
    Io {
        path: Option<PathBuf>,
        #[source]
        source: std::io::Error,
    },
}

fn path_suffix(path: &Option<PathBuf>) -> String {
    match path {
        Some(p) => format!(" ({})", p.display()),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedImage {
            path: None,
            msg: msg.into(),
        }
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedFormat {
            path: None,
            msg: msg.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Attach a file path to errors that carry one, for nicer diagnostics.
    pub(crate) fn with_path(self, p: &std::path::Path) -> Self {
        match self {
            Error::MalformedImage { msg, .. } => Error::MalformedImage {
                path: Some(p.to_owned()),
                msg,
            },
            Error::UnsupportedFormat { msg, .. } => Error::UnsupportedFormat {
                path: Some(p.to_owned()),
                msg,
            },
            Error::Io { source, .. } => Error::Io {
                path: Some(p.to_owned()),
                source,
            },
            other => other,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(source: std::io::Error) -> Self {
        Error::Io { path: None, source }
    }
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
