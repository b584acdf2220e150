use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("seam mismatch: word starts with {expected} strands but ends with {found}")]
    SeamMismatch { expected: usize, found: usize },

    #[error("line {line}: position {position} out of range for {strands} strands")]
    PositionOutOfRange {
        line: usize,
        position: usize,
        strands: usize,
    },

    #[error("orientation: {0}")]
    Orientation(String),

    #[error("vertex has {found} coordinates, diagram has {expected} crossings")]
    VertexLength { expected: usize, found: usize },

    #[error("not a ladybug configuration: {0}")]
    NotLadybug(String),

    #[error("incomparable face composites at vertex {vertex:#b}, crossings {c1} and {c2}")]
    IncomparableComposites { vertex: u32, c1: usize, c2: usize },

    #[error("obstruction is not a cocycle on the 3-face at vertex {vertex:#b}, crossings {crossings:?}")]
    NotCocycle { vertex: u32, crossings: [usize; 3] },

    #[error("equivariant edge assignment requires odd p")]
    EvenPeriod,

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("{0} is not a valid period (need p >= 2)")]
    BadPeriod(u32),

    #[error("unsupported ring: {0}")]
    Ring(String),

    #[error("too many crossings: {0} (limit {1})")]
    TooLarge(usize, usize),

    #[error("too many circles in a resolution: {0} (limit 32)")]
    TooManyCircles(usize),

    #[error("coherence failure: {0}")]
    Coherence(String),

    #[error("correspondences are not composable: {0}")]
    Composition(String),

    #[error("no sign-preserving face matching: {0}")]
    Matching(String),

    #[error("integer overflow in elimination")]
    Overflow,

    #[error("{0}")]
    Invalid(String),
}
