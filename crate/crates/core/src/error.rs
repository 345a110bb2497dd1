use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature (0,0) has no adjacency kinds")]
    ZeroSignature,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("color {color} out of range 1..={max}")]
    ColorOutOfRange { color: u32, max: u32 },
    #[error("pair {{{0},{1}}} already carries an adjacency")]
    DuplicateAdjacency(usize, usize),
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("partition does not induce a simple, consistently colored quotient")]
    InvalidPartition,
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(String, String),
    #[error("work bound {required} exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("signature ({0},{1}) is not supported by this construction")]
    UnsupportedSignature(u32, u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vertices {0:?} do not form a 4-cycle")]
    NotACycle([usize; 4]),
    #[error("edge {{{0},{1}}} has no color")]
    PartialColoring(usize, usize),
    #[error("assignment does not NAE-satisfy clause {0}")]
    NotNaeSatisfying(usize),
}
