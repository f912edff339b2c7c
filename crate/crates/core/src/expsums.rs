//! The four trigonometric sums over the counting windows: F (log-weighted.
//! primes near N/2), F-tilde (log-weighted primes up to A, doubled argument),
//! and their integer companions u, u-tilde in geometric closed form. Also the
//! major-arc residuals and the minor-arc bound ratio built from them.
//!
//! Phase accuracy is the point of this module. A phase alpha*p is never
//! formed as a plain product when alpha is known as a/q + beta: the rational
//! part reduces exactly as a*(p mod q) mod q over q, and only beta*p goes
//! through floating point (with an FMA split, see `numeric::frac_product`).

use crate::arith::{euler_phi, gcd, mobius, ramanujan_sum};
use crate::circle::{dirichlet_approx, CircleParams};
use crate::error::{Error, Result};
use crate::numeric::{e_unit, frac_product, half_frac_product, pairwise_sum_complex};
use crate::primes::{sieve_window, PrimeWindow};
use num_complex::Complex64;

/// Which of the four sums a sample refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    F,
    FTilde,
    U,
    UTilde,
}

/// One evaluated point of one of the four sums.
#[derive(Debug, Clone, Copy)]
pub struct ExpSumSample {
    pub alpha: f64,
    pub kind: SumKind,
    pub value: Complex64,
}

/// Empirical record of the minor-arc bound at one point: the Dirichlet
/// approximation (a, q), the cutoff H = exp(sqrt(log N)/2), the bound
/// A * log^4 N * (sqrt(q/A) + sqrt(1/q) + 1/H), and the observed ratio
/// |F-tilde(alpha)| / bound.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct VinogradovBound {
    pub alpha: f64,
    pub a: i64,
    pub q: u64,
    pub h: f64,
    pub bound: f64,
    pub f_tilde_abs: f64,
    pub ratio: f64,
}

/// Prime windows for one parameter set, shared by every sum evaluation.
#[derive(Debug, Clone)]
pub struct SumContext {
    params: CircleParams,
    main: PrimeWindow,
    small: PrimeWindow,
}

impl SumContext {
    /// Sieve both windows: (N/2 - A, N/2 + A] for F/u and (2, A] for the
    /// tilde sums.
    pub fn new(params: &CircleParams) -> Result<Self> {
        let n = params.n as f64;
        let a = params.half_width;
        if n / 2.0 - a < 2.0 {
            return Err(Error::WindowBelowTwo { lo: n / 2.0 - a, hi: n / 2.0 + a });
        }
        let main = PrimeWindow::from_real_bounds(n / 2.0 - a, n / 2.0 + a)?;
        let a_floor = a.floor() as u64;
        let small =
            if a_floor >= 3 { sieve_window(2, a_floor)? } else { PrimeWindow::empty(2, 2) };
        Ok(Self { params: *params, main, small })
    }

    pub fn params(&self) -> &CircleParams {
        &self.params
    }

    pub fn main_window(&self) -> &PrimeWindow {
        &self.main
    }

    pub fn small_window(&self) -> &PrimeWindow {
        &self.small
    }

    /// theta(N, A): the log weight of the main window, also F(0).
    pub fn theta_main(&self) -> f64 {
        self.main.log_sum()
    }

    /// theta over (2, A], also F-tilde(0).
    pub fn theta_small(&self) -> f64 {
        self.small.log_sum()
    }

    /// F(alpha) = sum over the main window of log(p) e(alpha * p).
    pub fn f(&self, alpha: f64) -> Complex64 {
        window_sum(&self.main, |p| frac_product(alpha, p as f64))
    }

    /// F-tilde(alpha) = sum over (2, A] of log(p) e(alpha * 2p).
    pub fn f_tilde(&self, alpha: f64) -> Complex64 {
        window_sum(&self.small, |p| frac_product(alpha, 2.0 * p as f64))
    }

    /// F at alpha = a/q + beta with the rational phase reduced exactly in
    /// integer arithmetic.
    pub fn f_at_arc(&self, a: u64, q: u64, beta: f64) -> Complex64 {
        window_sum(&self.main, |p| {
            let rational = (a as u128 * (p % q) as u128 % q as u128) as f64 / q as f64;
            rational + frac_product(beta, p as f64)
        })
    }

    /// F-tilde at alpha = a/q + beta; the doubled argument uses 2p mod q.
    pub fn f_tilde_at_arc(&self, a: u64, q: u64, beta: f64) -> Complex64 {
        window_sum(&self.small, |p| {
            let rational = (a as u128 * (2 * p % q) as u128 % q as u128) as f64 / q as f64;
            rational + frac_product(beta, 2.0 * p as f64)
        })
    }

    fn main_bounds(&self) -> (u64, u64) {
        let n = self.params.n as f64;
        let a = self.params.half_width;
        ((n / 2.0 - a).floor() as u64, (n / 2.0 + a).floor() as u64)
    }

    /// u(beta) = sum of e(beta * n) over integers in (N/2 - A, N/2 + A],
    /// geometric closed form.
    pub fn u(&self, beta: f64) -> Complex64 {
        let (lo, hi) = self.main_bounds();
        geometric_phase_sum(beta, lo + 1, hi)
    }

    /// u-tilde(beta) = sum of e(beta * 2n) over integers 2 < n <= A.
    pub fn u_tilde(&self, beta: f64) -> Complex64 {
        let hi = self.params.half_width.floor() as u64;
        geometric_phase_sum(2.0 * beta, 3, hi)
    }

    /// Direct-summation companion of [`Self::u`] (the closed form must agree
    /// with it); kept public as the independent route.
    pub fn u_direct(&self, beta: f64) -> Complex64 {
        let (lo, hi) = self.main_bounds();
        direct_phase_sum(beta, lo + 1, hi)
    }

    /// Direct-summation companion of [`Self::u_tilde`].
    pub fn u_tilde_direct(&self, beta: f64) -> Complex64 {
        let hi = self.params.half_width.floor() as u64;
        direct_phase_sum(2.0 * beta, 3, hi)
    }

    pub fn sample(&self, kind: SumKind, alpha: f64) -> ExpSumSample {
        let value = match kind {
            SumKind::F => self.f(alpha),
            SumKind::FTilde => self.f_tilde(alpha),
            SumKind::U => self.u(alpha),
            SumKind::UTilde => self.u_tilde(alpha),
        };
        ExpSumSample { alpha, kind, value }
    }

    /// Residuals of the major-arc approximations at alpha = a/q + beta:
    /// rF  = |F(alpha)       - mu(q)/phi(q)   * u(beta)|,
    /// rFt = |F-tilde(alpha) - C_q(2a)/phi(q) * u-tilde(beta)|.
    pub fn major_arc_residual(&self, q: u64, a: u64, beta: f64) -> Result<(f64, f64)> {
        if q == 0 {
            return Err(Error::Zero("q"));
        }
        if gcd(a % q, q) != 1 {
            return Err(Error::NotCoprime { q, r: a % q });
        }
        if q as f64 > self.params.denom_limit {
            return Err(Error::InvalidParameter(format!(
                "q = {q} exceeds Q = {}",
                self.params.denom_limit
            )));
        }
        if beta.abs() > self.params.arc_halfwidth() {
            return Err(Error::InvalidParameter(format!(
                "beta = {beta} outside [-1/tau, 1/tau]"
            )));
        }
        let phi = euler_phi(q)? as f64;
        let mu = mobius(q)? as f64;
        let c2a = ramanujan_sum(q, 2 * a as i64)? as f64;
        let r_f = (self.f_at_arc(a, q, beta) - self.u(beta) * (mu / phi)).norm();
        let r_ft = (self.f_tilde_at_arc(a, q, beta) - self.u_tilde(beta) * (c2a / phi)).norm();
        Ok((r_f, r_ft))
    }

    /// Evaluate the minor-arc bound at alpha. The point must be minor
    /// (Dirichlet denominator above Q) and the denominator must stay within
    /// the bound's range q <= A.
    pub fn vinogradov_ratio(&self, alpha: f64) -> Result<VinogradovBound> {
        let params = &self.params;
        let (a, q) = dirichlet_approx(alpha, params.tau);
        if q as f64 <= params.denom_limit {
            return Err(Error::NotMinor { alpha, q });
        }
        if q as f64 > params.half_width {
            return Err(Error::DenominatorOutOfRange { q, a: params.half_width });
        }
        let log_n = (params.n as f64).ln();
        let h = (0.5 * log_n.sqrt()).exp();
        let a_width = params.half_width;
        let bound = a_width
            * log_n.powi(4)
            * ((q as f64 / a_width).sqrt() + (1.0 / q as f64).sqrt() + 1.0 / h);
        let f_tilde_abs = self.f_tilde(alpha).norm();
        Ok(VinogradovBound { alpha, a, q, h, bound, f_tilde_abs, ratio: f_tilde_abs / bound })
    }
}

fn window_sum(window: &PrimeWindow, phase: impl Fn(u64) -> f64) -> Complex64 {
    let terms: Vec<Complex64> = window
        .primes()
        .iter()
        .zip(window.log_weights())
        .map(|(&p, &w)| e_unit(phase(p)) * w)
        .collect();
    pairwise_sum_complex(&terms)
}

/// Sum of e(beta * n) for n in [first, last], by the Dirichlet-kernel closed
/// form e(beta * (first + last)/2) * sin(pi beta L) / sin(pi beta) with
/// L = last - first + 1. Exact count at beta = 0 (mod 1).
fn geometric_phase_sum(beta: f64, first: u64, last: u64) -> Complex64 {
    if last < first {
        return Complex64::new(0.0, 0.0);
    }
    let count = (last - first + 1) as f64;
    let beta_red = beta - beta.round();
    if beta_red == 0.0 {
        return Complex64::new(count, 0.0);
    }
    let center_phase = frac_product(beta_red, (first + last) as f64 / 2.0);
    let num = (std::f64::consts::PI * half_frac_product(beta_red, count)).sin();
    let den = (std::f64::consts::PI * beta_red).sin();
    e_unit(center_phase) * (num / den)
}

fn direct_phase_sum(beta: f64, first: u64, last: u64) -> Complex64 {
    if last < first {
        return Complex64::new(0.0, 0.0);
    }
    let terms: Vec<Complex64> =
        (first..=last).map(|n| e_unit(frac_product(beta, n as f64))).collect();
    pairwise_sum_complex(&terms)
}
