use crate::gf::GfError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension must be at least {min}, got {n}")]
    Dimension { n: usize, min: usize },
    #[error("GL_{n}(F_{q}) keys need q^(n^2) <= 2^64")]
    KeyOverflow { n: usize, q: u64 },
    #[error("{what} of size {size} exceeds the bound {bound}")]
    Bound { what: &'static str, size: u128, bound: u128 },
    #[error("memory cap exceeded at step {step}: support reached {support} (cap {cap})")]
    MemoryCap { step: usize, support: usize, cap: usize },
    #[error("tuple budget exceeded: more than {budget} tuples (found {found} so far)")]
    TupleBudget { budget: usize, found: usize },
    #[error("GL_1(F_2) has no reflections, so the trivial Singer cycle has no factorization count")]
    DegenerateGl1F2,
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("routes disagree: {0}")]
    RouteMismatch(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
