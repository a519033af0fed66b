use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field order {p}^{r} is out of range (need r >= 1 and q <= 65536)")]
    FieldTooLarge { p: u64, r: u32 },

    #[error("no primitive polynomial of degree {r} over F_{p}")]
    NoPrimitivePolynomial { p: u32, r: u32 },

    #[error("division by zero in finite field")]
    DivisionByZero,

    #[error("value {value} out of range for {what} (limit {limit})")]
    OutOfRange { what: &'static str, value: u64, limit: u64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("message polynomial has degree {degree}, code dimension is {k}")]
    DegreeTooHigh { degree: usize, k: usize },

    #[error("word is not a codeword of the requested code")]
    NotACodeword,

    #[error("invalid code tower: {0}")]
    InvalidTower(String),

    #[error("interpolation cost {cost} exceeds cap {cap}")]
    CostCapExceeded { cost: u64, cap: u64 },

    #[error("list size bound S = {s} must exceed {min} for a nonempty guarantee")]
    ListBoundTooSmall { s: f64, min: f64 },

    #[error("decoder at level {level} failed: {source}")]
    Level {
        level: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("decoder returned a vector at squared distance {sq_dist} > {sq_radius}")]
    SoundnessViolation { sq_dist: f64, sq_radius: f64 },

    #[error("dimension {n} too large for exhaustive enumeration (max {max})")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("optimization did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("KKT condition violated: {what} residual {residual:e}")]
    KktViolation { what: String, residual: f64 },

    #[error("integer overflow in exact lattice arithmetic")]
    Overflow,

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
