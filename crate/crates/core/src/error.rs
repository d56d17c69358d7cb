use thiserror::Error;

/// Errors produced by the library.
///
/// The variants split into two classes: input problems (`Domain`,
/// `DegenerateData`, `Unsupported`, `NonIdentifiable`) and numerical
/// failures (`Numeric`). Front ends map the classes to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    #[error("{what} is not available for the {model} model")]
    Unsupported {
        model: &'static str,
        what: &'static str,
    },
    #[error("non-identifiable: {0}")]
    NonIdentifiable(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Numeric(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
