use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors from reading the edge-list text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed token {token:?}")]
    MalformedToken { line: usize, token: String },
    #[error("line {line}: expected two vertex indices, found {found} tokens")]
    WrongArity { line: usize, found: usize },
    #[error("line {line}: loop edge at vertex {vertex}")]
    LoopEdge { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex index {index} exceeds limit {limit}")]
    IndexOverflow { line: usize, index: usize, limit: usize },
    #[error("line {line}: misplaced or repeated header")]
    MisplacedHeader { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("vertex {vertex} out of range for order {order}")]
    InvalidVertex { vertex: usize, order: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("graph is not a forest")]
    NotAForest,
    #[error("{what}: order {order} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("function has {got} values but graph has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid label {0}; labels are 0, 1 or 2")]
    InvalidLabel(u8),
    #[error("graph is not Roman-excellent")]
    NotExcellent,
    #[error("order {order} is below the minimum {min} for {what}")]
    OrderTooSmall {
        what: &'static str,
        order: usize,
        min: usize,
    },
    #[error("status precondition violated: {0}")]
    StatusPrecondition(String),
    #[error("invalid piece reference: {0}")]
    InvalidPiece(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("base catalog derivation failed: {0}")]
    Catalog(String),
    #[error("recognizer invariant broken: {0}")]
    Recognizer(String),
    #[error("invalid input: {0}")]
    Input(String),
}
