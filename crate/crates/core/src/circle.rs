//! Circle geometry: the parameter triple (A, Q, tau), major-arc enumeration,
//! point classification, and rational approximation by continued fractions.

use crate::arith::{euler_phi, gcd};
use crate::error::{Error, Result};

/// How the parameters were chosen.
///
/// `Asymptotic` uses the formulas A = N*exp(-eps*sqrt(log N)),
/// Q = (log N)^lambda, tau = A^2/(N*Q); they only separate the arcs for
/// astronomically large N, so at desk scale construction is expected to
/// fail with [`Error::ArcOverlap`]. `Desk` picks explicit values that keep
/// the arcs disjoint at any N; `Explicit` takes them verbatim from the
/// caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    #[serde(rename = "paper")]
    Asymptotic,
    Desk,
    Explicit,
}

impl std::fmt::Display for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Profile::Asymptotic => write!(f, "paper"),
            Profile::Desk => write!(f, "desk"),
            Profile::Explicit => write!(f, "explicit"),
        }
    }
}

/// Parameters governing one verification run: the window half-width A, the
/// major-arc denominator limit Q, and tau (each arc has halfwidth 1/tau).
///
/// Construction enforces 2 < A < N/2, Q >= 1 and the disjointness condition
/// 2Q^2 <= tau.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct CircleParams {
    pub n: u64,
    pub eps: Option<f64>,
    pub lambda: Option<f64>,
    pub half_width: f64,
    pub denom_limit: f64,
    pub tau: f64,
    pub profile: Profile,
}

impl CircleParams {
    /// Asymptotic-formula profile. Fails with `ArcOverlap` whenever the
    /// formulas produce overlapping arcs, which they do at any desk-scale N.
    pub fn asymptotic(n: u64, eps: f64, lambda: f64) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::OddN(n));
        }
        if n < 100 {
            return Err(Error::InvalidParameter(format!("N = {n} below 100")));
        }
        if !(0.0 < eps && eps < 1.0) {
            return Err(Error::InvalidParameter(format!("eps = {eps} outside (0, 1)")));
        }
        if lambda <= 0.0 {
            return Err(Error::InvalidParameter(format!("lambda = {lambda} not positive")));
        }
        let log_n = (n as f64).ln();
        let half_width = n as f64 * (-eps * log_n.sqrt()).exp();
        let denom_limit = log_n.powf(lambda);
        let tau = half_width * half_width / (n as f64 * denom_limit);
        Self {
            n,
            eps: Some(eps),
            lambda: Some(lambda),
            half_width,
            denom_limit,
            tau,
            profile: Profile::Asymptotic,
        }
        .validated()
    }

    /// Desk profile: A defaults to N/4 and Q to the largest integer with
    /// 2Q^3 <= A^2/N (so that tau = A^2/(N*Q) satisfies 2Q^2 <= tau), at
    /// least 1. Either may be overridden.
    pub fn desk(n: u64, half_width: Option<f64>, denom_limit: Option<f64>) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::OddN(n));
        }
        let a = half_width.unwrap_or(n as f64 / 4.0);
        let q = denom_limit
            .unwrap_or_else(|| (a * a / (2.0 * n as f64)).cbrt().floor().max(1.0));
        let tau = a * a / (n as f64 * q);
        Self {
            n,
            eps: None,
            lambda: None,
            half_width: a,
            denom_limit: q,
            tau,
            profile: Profile::Desk,
        }
        .validated()
    }

    /// Fully explicit parameters.
    pub fn explicit(n: u64, half_width: f64, denom_limit: f64, tau: f64) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::OddN(n));
        }
        Self {
            n,
            eps: None,
            lambda: None,
            half_width,
            denom_limit,
            tau,
            profile: Profile::Explicit,
        }
        .validated()
    }

    fn validated(self) -> Result<Self> {
        if !(self.tau > 0.0) {
            return Err(Error::InvalidParameter(format!("tau = {} not positive", self.tau)));
        }
        // overlap first: it is the interesting failure of the asymptotic
        // profile and must be reported with the offending (Q, tau) pair
        let two_q_sq = 2.0 * self.denom_limit * self.denom_limit;
        if two_q_sq > self.tau {
            return Err(Error::ArcOverlap { two_q_sq, tau: self.tau });
        }
        let a = self.half_width;
        if !(a > 2.0 && a < self.n as f64 / 2.0) {
            return Err(Error::InvalidParameter(format!(
                "A = {a} outside (2, N/2) for N = {}",
                self.n
            )));
        }
        if self.denom_limit < 1.0 {
            return Err(Error::InvalidParameter(format!(
                "Q = {} below 1",
                self.denom_limit
            )));
        }
        Ok(self)
    }

    /// Halfwidth 1/tau of every major arc.
    pub fn arc_halfwidth(&self) -> f64 {
        1.0 / self.tau
    }
}

/// One major arc: the interval of halfwidth 1/tau around a/q.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Arc {
    pub q: u64,
    pub a: u64,
    pub halfwidth: f64,
}

impl Arc {
    pub fn center(&self) -> f64 {
        self.a as f64 / self.q as f64
    }

    pub fn contains(&self, alpha: f64) -> bool {
        (alpha - self.center()).abs() <= self.halfwidth
    }
}

/// The major arcs for given parameters; everything else in the fundamental
/// domain [-1/tau, 1 - 1/tau) is minor.
#[derive(Debug, Clone)]
pub struct ArcPartition {
    pub params: CircleParams,
    pub arcs: Vec<Arc>,
}

impl ArcPartition {
    pub fn major_count(&self) -> usize {
        self.arcs.len()
    }

    /// Total measure of the major arcs: count * 2/tau.
    pub fn major_measure(&self) -> f64 {
        self.arcs.len() as f64 * 2.0 / self.params.tau
    }

    /// The fundamental domain [-1/tau, 1 - 1/tau).
    pub fn domain(&self) -> (f64, f64) {
        (-1.0 / self.params.tau, 1.0 - 1.0 / self.params.tau)
    }
}

/// One arc per pair (q <= Q, 0 <= a < q, gcd(a, q) = 1); the q = 1 arc sits
/// at 0. Count is the phi summatory function at Q.
pub fn enumerate_major_arcs(params: &CircleParams) -> ArcPartition {
    let halfwidth = params.arc_halfwidth();
    let q_max = params.denom_limit.floor() as u64;
    let mut arcs = Vec::new();
    for q in 1..=q_max {
        if q == 1 {
            arcs.push(Arc { q: 1, a: 0, halfwidth });
            continue;
        }
        for a in 1..q {
            if gcd(a, q) == 1 {
                arcs.push(Arc { q, a, halfwidth });
            }
        }
    }
    ArcPartition { params: *params, arcs }
}

/// Verdict of [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Major { q: u64, a: u64 },
    Minor,
}

/// Reduce alpha mod 1 into the fundamental domain [-1/tau, 1 - 1/tau).
pub fn reduce_to_domain(alpha: f64, tau: f64) -> f64 {
    let mut x = alpha - alpha.floor();
    if x >= 1.0 - 1.0 / tau {
        x -= 1.0;
    }
    x
}

/// Locate alpha in the partition. Boundary ties (distance exactly 1/tau)
/// count as major. Disjointness (2Q^2 <= tau) makes the verdict unique: for
/// each q the only candidate center is the nearest fraction a/q, and a
/// non-reduced hit would already have been caught at the smaller
/// denominator.
pub fn classify(alpha: f64, partition: &ArcPartition) -> Classification {
    let params = &partition.params;
    let x = reduce_to_domain(alpha, params.tau);
    let halfwidth = params.arc_halfwidth();
    let q_max = params.denom_limit.floor() as u64;
    for q in 1..=q_max {
        let a = (x * q as f64).round();
        if a < 0.0 {
            continue;
        }
        let a = a as u64;
        if a >= q && !(q == 1 && a == 0) {
            continue;
        }
        if (x - a as f64 / q as f64).abs() <= halfwidth && gcd(a, q) == 1 {
            return Classification::Major { q, a };
        }
    }
    Classification::Minor
}

/// Best rational approximation by continued-fraction convergents: returns
/// coprime (a, q) with 1 <= q <= tau and |alpha - a/q| < 1/(q*tau).
pub fn dirichlet_approx(alpha: f64, tau: f64) -> (i64, u64) {
    assert!(tau >= 1.0, "tau must be at least 1");
    // convergents h/k; (h0, k0) is one step behind (h1, k1)
    let mut x = alpha;
    let a0 = x.floor();
    let (mut h0, mut k0) = (1i64, 0u64);
    let (mut h1, mut k1) = (a0 as i64, 1u64);
    for _ in 0..64 {
        let frac = x - x.floor();
        if frac.abs() < 1e-15 {
            break;
        }
        x = 1.0 / frac;
        let a = x.floor();
        if a >= 2f64.powi(50) {
            break;
        }
        let k_next = a as u64 * k1 + k0;
        if k_next as f64 > tau {
            break;
        }
        let h_next = a as i64 * h1 + h0;
        (h0, k0) = (h1, k1);
        (h1, k1) = (h_next, k_next);
    }
    (h1, k1)
}
