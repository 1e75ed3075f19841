use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    /// A value was combined with a group it does not belong to.
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("argument error: {0}")]
    Argument(String),
    /// An operation's mathematical precondition does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// The truncation depth or horizon is too small to carry out the request.
    #[error("depth exhausted: {0}")]
    DepthExhausted(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
