use num_rational::BigRational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The rational has a denominator divisible by p, so it has no image in Z/p^s.
    #[error("{rational} is not p-integral for p = {p}")]
    NotPIntegral { rational: BigRational, p: u64 },

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("precision exceeded: requested degree {requested}, but only {cap} coefficients are known")]
    Precision { requested: usize, cap: usize },

    #[error("precision s = {s} is unsupported for p = {p} (need s < p)")]
    UnsupportedPrecision { p: u64, s: u32 },

    #[error("degenerate Newton polytope: {0}")]
    Degenerate(String),

    #[error("no unit pivot available; discriminant is not a unit")]
    DiscNotUnit,

    #[error("malformed differential form: {0}")]
    MalformedForm(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
