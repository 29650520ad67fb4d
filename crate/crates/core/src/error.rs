use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported modulus {0}: expected one of 2, 3, 5, 7")]
    UnsupportedModulus(u32),

    #[error("entry {value} out of range for F_{p}")]
    EntryOutOfRange { value: u32, p: u8 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid quiver: {0}")]
    Quiver(String),

    #[error("invalid relation: {0}")]
    Relation(String),

    #[error("presentation is not admissible: path {witness} does not vanish up to length {bound}")]
    NotAdmissible { witness: String, bound: usize },

    #[error("relation {index} ({relation}) does not vanish on the representation")]
    RelationViolated { index: usize, relation: String },

    #[error("representations live over different algebras")]
    AlgebraMismatch,

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),

    #[error("the zero module is not allowed here")]
    ZeroModule,

    #[error("algebra has relations; a hereditary presentation is required")]
    NotHereditary,

    #[error("cap exceeded in {what}: {estimate}")]
    CapExceeded { what: String, estimate: String },

    #[error("{0}")]
    Precondition(String),

    #[error("embedding search stalled: {0}")]
    Stalled(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: impl Into<String>, estimate: impl Into<String>) -> Self {
        Error::CapExceeded { what: what.into(), estimate: estimate.into() }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
