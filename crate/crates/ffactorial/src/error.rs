use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("limit {0} exceeds the supported sieving capacity")]
    Capacity(u64),

    #[error("f(p) = {value} is not positive at p = {p}")]
    NonPositive { p: u64, value: String },

    #[error(
        "floor of n/(f(p) p^k) still ambiguous at {ceiling} bits; candidates {lo} and {hi}"
    )]
    AmbiguousFloor { lo: u64, hi: u64, ceiling: u32 },

    #[error("comparison of f({p}) against {x} undecidable at {ceiling} bits")]
    AmbiguousComparison { p: u64, x: String, ceiling: u32 },

    #[error("{f} does not tend to infinity along the primes; n!_f diverges for n >= 1")]
    DivergentFactorial { f: String },

    #[error("certificate (alpha = {alpha}, M = {m}) violated at p = {p}: {side} side")]
    CertificateViolation {
        alpha: u64,
        m: String,
        p: u64,
        side: &'static str,
    },

    #[error("binomial exponent went negative at p = {p}; divisibility violated")]
    ViolatedDivisibility { p: u64 },

    #[error("set truncation has {have} elements but {need} are required")]
    TruncationTooSmall { have: usize, need: usize },

    #[error("v_n changed when the {what} truncation was doubled")]
    UnstableTruncation { what: &'static str },

    #[error("tolerance {tol:e} unreachable within the prime budget (best width {best_width:e})")]
    BudgetExceeded { tol: f64, best_width: f64 },

    #[error("no closed-form inverse available for {f}")]
    Unsupported { f: String },

    #[error("cannot parse {0:?} as an f-map")]
    Parse(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
