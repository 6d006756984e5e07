use thiserror::Error;

/// Errors raised by construction, certification and verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial is not squarefree (gcd with derivative has degree {0})")]
    NonSquarefree(usize),
    #[error("root iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("recurrence breakdown at step {0}")]
    RecurrenceBreakdown(usize),
    #[error("lines {0} and {1} coincide after expansion")]
    Collision(usize, usize),
    #[error("lines {0} and {1} are collinear")]
    Collinear(usize, usize),
    #[error("missing exact data: {0}")]
    MissingExactData(&'static str),
    #[error("multiplicity {0} is not a positive integer")]
    NonIntegerMultiplicity(f64),
    #[error("rank decision is ill-conditioned at degree {degree} (log2 margin {margin_log2:.1})")]
    IllConditioned { degree: usize, margin_log2: f64 },
    #[error("coefficient b_{degree} = {found} violates the tail law (expected {expected})")]
    TailMismatch {
        degree: usize,
        expected: i64,
        found: i64,
    },
    #[error("formula hypothesis does not hold: {0}")]
    OutOfRange(String),
    #[error("invalid order: m = {m} < m~ = {mtilde}")]
    InvalidOrder { m: u32, mtilde: u32 },
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
