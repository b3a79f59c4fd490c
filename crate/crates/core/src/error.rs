use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed input data; `path` names the failing location inside the document.
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn parse_err<T>(path: &str, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        path: path.to_string(),
        msg: msg.into(),
    })
}
