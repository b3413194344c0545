use alloc::string::String;

/// Errors raised by the exact-arithmetic, format and search layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("undefined GCD: both polynomials are zero")]
    UndefinedGcd,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("exact division left a nonzero remainder")]
    InexactDivision,
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("pole at t=0")]
    PoleAtZero,
    #[error("pole at evaluation point {0}")]
    PoleAtPoint(String),
    #[error("pole of order {order} along the {d}-th cyclotomic factor; only simple poles have a residue class")]
    HigherOrderPole { d: u32, order: u32 },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),

    #[error("unknown format `{0}` (expected g2 or gr25)")]
    UnknownFormat(String),
    #[error("parameter mismatch: format {format} expects {expected} entries in mu, got {got}")]
    ParamLength {
        format: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("invalid parameters: nonpositive ambient weight {weight}")]
    NonpositiveWeight { weight: i64 },
    #[error("truncation insufficient or format data inconsistent: {0}")]
    Inconsistent(String),
    #[error("parameter bound not supported for this format: {0}")]
    UnsupportedBound(String),

    #[error("canonical weight not compatible: k + sum(a_i) = {sum} is not divisible by r = {r}")]
    IncompatibleCanonicalWeight { r: u32, sum: i64 },
    #[error("non-isolated type: gcd(r = {r}, a = {a}) != 1")]
    NonIsolated { r: u32, a: u32 },
    #[error("invalid singularity: {0}")]
    InvalidSingularity(String),
    #[error("dimension mismatch: (1-t)^(n+1) P(t) still has a pole at t=1")]
    DimensionMismatch,
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = core::result::Result<T, Error>;
