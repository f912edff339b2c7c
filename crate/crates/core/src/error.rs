use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} must be nonzero")]
    Zero(&'static str),

    #[error("inverted window bounds: ({lo}, {hi}]")]
    InvertedBounds { lo: u64, hi: u64 },

    #[error("residue {r} is not coprime to modulus {q}")]
    NotCoprime { q: u64, r: u64 },

    #[error("N must be even, got {0}")]
    OddN(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("prime window ({lo}, {hi}] extends below 2")]
    WindowBelowTwo { lo: f64, hi: f64 },

    #[error("Euler-product truncation P = {p_max} is below the prime factor {factor} of N = {n}")]
    TruncationTooSmall { p_max: u64, factor: u64, n: u64 },

    #[error("major arcs would overlap: 2Q^2 = {two_q_sq} exceeds tau = {tau}")]
    ArcOverlap { two_q_sq: f64, tau: f64 },

    #[error("DFT grid M = {m} too small: need M > N + 4A = {min}")]
    GridTooSmall { m: u64, min: f64 },

    #[error("memory budget exceeded: need about {need_mib} MiB, budget is {budget_mib} MiB")]
    Capacity { need_mib: u64, budget_mib: u64 },

    #[error("sum does not round to an integer: {value} is {dist} away from the nearest")]
    RoundingFailure { value: f64, dist: f64 },

    #[error("imaginary residue {imag} exceeds tolerance {tol}")]
    ImaginaryResidue { imag: f64, tol: f64 },

    #[error("alpha = {alpha} lies on a major arc (denominator {q} <= Q)")]
    NotMinor { alpha: f64, q: u64 },

    #[error("denominator q = {q} exceeds A = {a}; outside the bound's stated range")]
    DenominatorOutOfRange { q: u64, a: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
