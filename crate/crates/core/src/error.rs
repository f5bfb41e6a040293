use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// What went wrong on a given line of a text input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    BadHeader(String),
    BadToken(String),
    Arity { expected: usize, found: usize },
    VertexOutOfRange { vertex: u64, n: u32 },
    RepeatedVertex(u32),
    DuplicateEdge,
    Truncated(String),
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing header line"),
            ParseErrorKind::BadHeader(h) => write!(f, "malformed header {h:?}"),
            ParseErrorKind::BadToken(t) => write!(f, "malformed token {t:?}"),
            ParseErrorKind::Arity { expected, found } => {
                write!(f, "expected {expected} vertices, found {found}")
            }
            ParseErrorKind::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} outside 1..={n}")
            }
            ParseErrorKind::RepeatedVertex(v) => write!(f, "vertex {v} repeated within a line"),
            ParseErrorKind::DuplicateEdge => write!(f, "duplicate edge"),
            ParseErrorKind::Truncated(what) => write!(f, "unexpected end of input: {what}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("step size {ell} does not divide vertex count {n}")]
    Divisibility { n: u32, ell: usize },

    #[error("unsupported case k={k}, ell={ell}: {reason}")]
    UnsupportedCase { k: usize, ell: usize, reason: String },

    #[error("incomplete solution: {0}")]
    IncompleteSolution(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("size error: {0}")]
    Size(String),

    #[error("degenerate set size: {0}")]
    DegenerateSize(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, kind: ParseErrorKind) -> Self {
        Error::Parse { line, kind }
    }

    pub(crate) fn unsupported(k: usize, ell: usize, reason: impl Into<String>) -> Self {
        Error::UnsupportedCase {
            k,
            ell,
            reason: reason.into(),
        }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        match self {
            e @ Error::Stage { .. } => e,
            e => Error::Stage {
                stage,
                source: Box::new(e),
            },
        }
    }

    /// The innermost error, skipping stage context.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::UnsupportedCase { .. } => 3,
            Error::Invariant(_) => 4,
            _ => 2,
        }
    }
}
