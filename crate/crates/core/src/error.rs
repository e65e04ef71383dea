use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown object {0}")]
    UnknownObject(usize),
    #[error("unknown arrow {0}")]
    UnknownArrow(usize),
    #[error("groupoid mismatch: {0}")]
    Mismatch(String),
    #[error("arrow {arrow} does not go from {expected_src} to {expected_tgt}")]
    EndpointMismatch {
        arrow: usize,
        expected_src: usize,
        expected_tgt: usize,
    },
    #[error("complex is not connected")]
    Disconnected,
    #[error("size guard exceeded: {0}")]
    Guard(String),
    #[error("action is not free: {0}")]
    NotFree(String),
    #[error("bundle is not biprincipal: {0}")]
    NotBiprincipal(String),
    #[error("lifting hypothesis violated: {0}")]
    Unliftable(String),
    #[error("non-uniform ineffectivity at vertex {vertex}")]
    NonUniformIneffectivity { vertex: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
