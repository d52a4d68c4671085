use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Term text could not be parsed. `pos` is a byte offset into the input.
    Parse { pos: usize, message: String },
    /// A presentation file failed on a given (1-based) line.
    Presentation { line: usize, message: String },
    UnknownBuiltin(String),
    /// Relation that is not multilinear or not homogeneous.
    InvalidRelation(String),
    ColumnLabelMismatch,
    ArityMismatch { expected: usize, found: usize },
    /// A term that is not multilinear where a multilinear one is required.
    NotMultilinear,
    SignatureMismatch { left: usize, right: usize },
    NonQuadratic,
    MissingAssignment(u32),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, message } => write!(f, "parse error at offset {pos}: {message}"),
            Error::Presentation { line, message } => write!(f, "line {line}: {message}"),
            Error::UnknownBuiltin(name) => write!(f, "unknown builtin presentation `{name}`"),
            Error::InvalidRelation(msg) => write!(f, "invalid relation: {msg}"),
            Error::ColumnLabelMismatch => f.write_str("matrices are over different column labelings"),
            Error::ArityMismatch { expected, found } => {
                write!(f, "arity mismatch: expected {expected}, found {found}")
            }
            Error::NotMultilinear => f.write_str("term is not multilinear"),
            Error::SignatureMismatch { left, right } => {
                write!(f, "signature size mismatch: {left} vs {right} operations")
            }
            Error::NonQuadratic => f.write_str("non-quadratic presentation: all relations must have degree 3"),
            Error::MissingAssignment(v) => write!(f, "no assignment for variable x{v}"),
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl core::error::Error for Error {}
