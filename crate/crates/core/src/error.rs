use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// What went wrong on a particular line of an input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    DuplicateVertex(String),
    UnknownVertex(String),
    UnknownFamily(String),
    DuplicateFamily(String),
    DuplicateEdge,
    EmptyFamily(String),
    NameClash(String),
    NoVertices,
    TooManyVertices(usize),
    TooManyLetters(usize),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::DuplicateVertex(v) => write!(f, "duplicate vertex `{v}`"),
            ParseErrorKind::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            ParseErrorKind::UnknownFamily(s) => write!(f, "arc for undeclared family `{s}`"),
            ParseErrorKind::DuplicateFamily(s) => write!(f, "duplicate family `{s}`"),
            ParseErrorKind::DuplicateEdge => write!(f, "duplicate edge"),
            ParseErrorKind::EmptyFamily(s) => write!(f, "family `{s}` has no arcs"),
            ParseErrorKind::NameClash(s) => {
                write!(f, "`{s}` is used both as an edge label and as a family stem")
            }
            ParseErrorKind::NoVertices => write!(f, "no vertices declared"),
            ParseErrorKind::TooManyVertices(n) => {
                write!(f, "{n} vertices declared, at most {} supported", crate::boolean::MAX_VERTICES)
            }
            ParseErrorKind::TooManyLetters(n) => {
                write!(f, "{n} labels and stems declared, at most {} supported", crate::graph::MAX_LETTERS)
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {kind}")]
    Parse { line: usize, column: usize, kind: ParseErrorKind },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("set is not an element of the algebra")]
    UnknownElement,

    #[error("family of sets is not an ideal: {0}")]
    InvalidIdeal(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("labeled space is not weakly left-resolving: {0}")]
    NotWeaklyLeftResolving(String),

    #[error("internal inconsistency in `{property}`: {detail}")]
    InternalInconsistency { property: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        Error::Parse { line, column, kind }
    }

    pub(crate) fn inconsistency(property: &str, detail: impl Into<String>) -> Self {
        Error::InternalInconsistency { property: property.to_string(), detail: detail.into() }
    }
}
