use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size limit: n + r = {size} exceeds the enumeration cap {cap}")]
    SizeLimit { size: u32, cap: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("configuration is a fixed point of the involution")]
    FixedPoint,
    #[error("malformed configuration: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}
