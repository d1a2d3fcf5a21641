use thiserror::Error;

/// Errors raised by the library. Each variant name doubles as the stable
/// error name reported by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}: {message}")]
    SyntaxError { line: usize, message: String },
    #[error("two hyperedges have the same member set: {first} and {second}")]
    DuplicateHyperedgeSet { first: String, second: String },
    #[error("hyperedge {0} is empty")]
    EmptyHyperedge(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("vertex {0} has an empty star")]
    EmptyStar(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("malformed rational {0:?}")]
    BadRational(String),

    #[error("set needs at least two elements, got {0}")]
    TooSmall(usize),
    #[error("vector is not in the nullspace of the contracted incidence graph")]
    NotInNullspace,
    #[error("sets are not disjoint; {0} appears in both")]
    NotDisjoint(String),
    #[error("vertex {0} appears among its own star partition")]
    Overlap(String),
    #[error("map is not a cardinality-preserving covering projection")]
    NotCardinalityPreserving,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("weights do not match the hypergraph: {0}")]
    WeightDomainMismatch(String),
    #[error("invalid weights: {0}")]
    InvalidWeight(String),
    #[error("matrix is neither symmetric nor diagonally similar to a symmetric matrix")]
    NotSymmetrizable,

    #[error("vertex {0} is isolated; the walk cannot leave it")]
    IsolatedVertex(String),
    #[error("hyperedge {0} is a singleton; the non-lazy walk is undefined on it")]
    SingletonEdgeNonLazy(String),
    #[error("invalid walk policy: {0}")]
    InvalidPolicy(String),
    #[error("operation requires a uniform walk policy")]
    NonUniformPolicy,
    #[error("bad distribution: {0}")]
    BadDistribution(String),
    #[error("target {target} is unreachable from {from}")]
    Unreachable { target: String, from: String },
    #[error("horizon must be at least 1")]
    BadHorizon,

    #[error("hypergraph is disconnected")]
    Disconnected,
    #[error("needs at least two hyperedges, found {0}")]
    TooFewEdges(usize),
    #[error("power iteration did not converge in {0} iterations")]
    NoConvergence(usize),
}

impl Error {
    /// Stable variant name, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SyntaxError { .. } => "SyntaxError",
            Error::DuplicateHyperedgeSet { .. } => "DuplicateHyperedgeSet",
            Error::EmptyHyperedge(_) => "EmptyHyperedge",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::EmptyStar(_) => "EmptyStar",
            Error::NotSquare { .. } => "NotSquare",
            Error::Singular => "Singular",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::BadRational(_) => "BadRational",
            Error::TooSmall(_) => "TooSmall",
            Error::NotInNullspace => "NotInNullspace",
            Error::NotDisjoint(_) => "NotDisjoint",
            Error::Overlap(_) => "Overlap",
            Error::NotCardinalityPreserving => "NotCardinalityPreserving",
            Error::InvalidCertificate(_) => "InvalidCertificate",
            Error::WeightDomainMismatch(_) => "WeightDomainMismatch",
            Error::InvalidWeight(_) => "InvalidWeight",
            Error::NotSymmetrizable => "NotSymmetrizable",
            Error::IsolatedVertex(_) => "IsolatedVertex",
            Error::SingletonEdgeNonLazy(_) => "SingletonEdgeNonLazy",
            Error::InvalidPolicy(_) => "InvalidPolicy",
            Error::NonUniformPolicy => "NonUniformPolicy",
            Error::BadDistribution(_) => "BadDistribution",
            Error::Unreachable { .. } => "Unreachable",
            Error::BadHorizon => "BadHorizon",
            Error::Disconnected => "Disconnected",
            Error::TooFewEdges(_) => "TooFewEdges",
            Error::NoConvergence(_) => "NoConvergence",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
