use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("duplicate vertex name `{0}`")]
    DuplicateName(String),

    #[error("side {0} has no vertices")]
    EmptySide(char),

    #[error("invalid vertex name `{0}`")]
    InvalidName(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("`{0}` and `{1}` are on the same side")]
    SameSide(String, String),

    #[error("asymmetric preferences: `{0}` lists `{1}` but not vice versa")]
    Asymmetric(String, String),

    #[error("`{0}` lists `{1}` more than once")]
    DuplicateNeighbor(String, String),

    #[error("vertex `{0}` has no neighbors")]
    IsolatedVertex(String),

    #[error("missing preference line for `{0}`")]
    MissingPreferences(String),

    #[error("`{0} {1}` is not an edge")]
    NonEdge(String, String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("negative weight on `{0}`")]
    NegativeWeight(String),

    #[error("invalid constraint set: {0}")]
    InvalidConstraints(String),

    #[error("matching is not popular")]
    NotPopular,

    #[error("enumeration cap of {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("hard case refused: exhaustive search over {edges} edges needs --allow-exponential (limit {limit} edges)")]
    HardCase { edges: usize, limit: usize },

    #[error("formula is not monotone: clause {0} mixes polarities")]
    NotMonotone(usize),

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    #[error("requested {requested} forbidden elements but only {available} negative gadgets exist")]
    NotEnoughNegativeGadgets { requested: usize, available: usize },

    #[error("assignment has no value for variable `{0}`")]
    IncompleteAssignment(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
