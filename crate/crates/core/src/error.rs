use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DuaError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("elements belong to different algebra specs")]
    SpecMismatch,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("generator index out of range: t{index} but n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("roots r,s required")]
    MissingRoots,
    #[error("inconsistent roots: {0}")]
    InconsistentRoots(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("spec file: {0}")]
    SpecFile(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
}

impl DuaError {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        DuaError::Parse { pos, msg: msg.into() }
    }

    /// True for errors that mean "outside what this kernel can decide".
    pub fn is_unsupported(&self) -> bool {
        matches!(self, DuaError::Unsupported(_))
    }
}

pub type Result<T, E = DuaError> = std::result::Result<T, E>;
