//! Segmented sieving over windows, log-weighted prime enumeration, and the
//! Chebyshev-type sums theta(t; q, r) and theta(N, A).

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;

const SEGMENT_LEN: u64 = 1 << 20;

/// The primes in a half-open interval (lo, hi], each paired with its natural
/// logarithm. Immutable once built.
#[derive(Debug, Clone)]
pub struct PrimeWindow {
    lo: u64,
    hi: u64,
    primes: Vec<u64>,
    log_weights: Vec<f64>,
}

impl PrimeWindow {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    /// Sum of the log weights, pairwise order.
    pub fn log_sum(&self) -> f64 {
        pairwise_sum(&self.log_weights)
    }

    /// Window with real bounds: the primes p with lo < p <= hi. Integer
    /// comparison against the floors is equivalent for integral p.
    pub fn from_real_bounds(lo: f64, hi: f64) -> Result<Self> {
        if !(lo >= 0.0) || !(hi > lo) {
            return Err(Error::InvertedBounds { lo: lo as u64, hi: hi as u64 });
        }
        sieve_window(lo.floor() as u64, hi.floor() as u64)
    }
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for p in 2..=limit {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= limit {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |sq| sq <= n) {
        r += 1;
    }
    r
}

/// Visit every prime in (lo, hi] in ascending order. Segmented: base primes
/// up to sqrt(hi), segments of ~2^20, so windows near N/2 never sieve from 0.
fn for_each_prime(lo: u64, hi: u64, mut visit: impl FnMut(u64)) {
    if hi < 2 || hi <= lo {
        return;
    }
    let base = simple_sieve(isqrt(hi).max(2));
    let mut seg_lo = lo + 1; // first candidate, inclusive
    while seg_lo <= hi {
        let seg_hi = seg_lo.saturating_add(SEGMENT_LEN - 1).min(hi);
        let len = (seg_hi - seg_lo + 1) as usize;
        let mut composite = vec![false; len];
        for &p in &base {
            if p * p > seg_hi {
                break;
            }
            let mut m = p.max(seg_lo.div_ceil(p)) * p;
            if m < p * p {
                m = p * p;
            }
            while m <= seg_hi {
                composite[(m - seg_lo) as usize] = true;
                m += p;
            }
        }
        for i in 0..len {
            let n = seg_lo + i as u64;
            if n >= 2 && !composite[i] {
                visit(n);
            }
        }
        seg_lo = seg_hi + 1;
    }
}

/// Exactly the primes in (lo, hi], ascending, with log weights.
pub fn sieve_window(lo: u64, hi: u64) -> Result<PrimeWindow> {
    if lo >= hi {
        return Err(Error::InvertedBounds { lo, hi });
    }
    let mut primes = Vec::new();
    let mut log_weights = Vec::new();
    for_each_prime(lo, hi, |p| {
        primes.push(p);
        log_weights.push((p as f64).ln());
    });
    Ok(PrimeWindow { lo, hi, primes, log_weights })
}

/// theta(t; q, r) = sum of log p over p <= t with p = r (mod q).
/// Requires gcd(q, r) = 1 and 0 <= r < q; summation is in ascending prime
/// order.
pub fn theta_progression(t: u64, q: u64, r: u64) -> Result<f64> {
    if q == 0 {
        return Err(Error::Zero("q"));
    }
    if r >= q && q > 1 {
        return Err(Error::InvalidParameter(format!("residue r = {r} not below q = {q}")));
    }
    if gcd(q, r) != 1 {
        return Err(Error::NotCoprime { q, r });
    }
    if t < 2 {
        return Err(Error::InvalidParameter(format!("t = {t} below 2")));
    }
    let mut logs = Vec::new();
    for_each_prime(0, t, |p| {
        if p % q == r % q {
            logs.push((p as f64).ln());
        }
    });
    Ok(pairwise_sum(&logs))
}

/// theta(N, A) = sum of log p over the window N/2 - A < p <= N/2 + A.
pub fn theta_window(n: u64, a: f64) -> Result<f64> {
    let half = n as f64 / 2.0;
    if half - a < 2.0 {
        return Err(Error::WindowBelowTwo { lo: half - a, hi: half + a });
    }
    let w = PrimeWindow::from_real_bounds(half - a, half + a)?;
    Ok(w.log_sum())
}

/// One residue class in a Siegel–Walfisz scan.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ProgressionErrorRow {
    pub q: u64,
    pub r: u64,
    pub theta: f64,
    pub expected: f64,
    pub normalized_error: f64,
}

/// Empirical error table for theta(t; q, r) against t / phi(q).
#[derive(Debug, Clone, serde::Serialize)]
pub struct ProgressionErrorScan {
    pub t: u64,
    pub q_max: u64,
    pub rows: Vec<ProgressionErrorRow>,
    pub max_normalized_error: f64,
}

/// Scan all q <= q_max and all residues r coprime to q, reporting
/// |theta(t; q, r) - t/phi(q)| / t per class. One sieve pass feeds every
/// class at once.
pub fn siegel_walfisz_scan(t: u64, q_max: u64) -> Result<ProgressionErrorScan> {
    if t < 100 {
        return Err(Error::InvalidParameter(format!("t = {t} below 100")));
    }
    if q_max == 0 {
        return Err(Error::Zero("q_max"));
    }
    let mut theta: Vec<Vec<f64>> = (0..=q_max).map(|q| vec![0.0; q.max(1) as usize]).collect();
    for_each_prime(0, t, |p| {
        let lp = (p as f64).ln();
        for q in 1..=q_max {
            theta[q as usize][(p % q) as usize] += lp;
        }
    });
    let mut rows = Vec::new();
    let mut max_err = 0.0f64;
    for q in 1..=q_max {
        let phi = crate::arith::euler_phi(q)? as f64;
        for r in 0..q {
            if gcd(q, r) != 1 {
                continue;
            }
            let th = theta[q as usize][r as usize];
            let expected = t as f64 / phi;
            let err = (th - expected).abs() / t as f64;
            max_err = max_err.max(err);
            rows.push(ProgressionErrorRow { q, r, theta: th, expected, normalized_error: err });
        }
    }
    Ok(ProgressionErrorScan { t, q_max, rows, max_normalized_error: max_err })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_textbook_windows() {
        assert_eq!(sieve_window(0, 10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve_window(40, 60).unwrap().primes(), &[41, 43, 47, 53, 59]);
        // boundary inclusivity: lo exclusive, hi inclusive
        assert_eq!(sieve_window(1, 2).unwrap().primes(), &[2]);
        assert_eq!(sieve_window(2, 3).unwrap().primes(), &[3]);
        assert!(sieve_window(10, 10).is_err());
        assert!(sieve_window(11, 10).is_err());
    }

    #[test]
    fn sieve_matches_trial_division_to_1e6() {
        let w = sieve_window(0, 1_000_000).unwrap();
        let mut count = 0usize;
        for n in 2..=1_000_000u64 {
            let mut prime = true;
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    prime = false;
                    break;
                }
                d += 1;
            }
            if prime {
                assert_eq!(w.primes()[count], n);
                count += 1;
            }
        }
        assert_eq!(w.len(), count);
        assert_eq!(w.len(), 78_498);
    }

    #[test]
    fn log_weights_are_aligned() {
        let w = sieve_window(100, 1000).unwrap();
        for (p, lw) in w.primes().iter().zip(w.log_weights()) {
            assert_eq!(*lw, (*p as f64).ln());
        }
    }

    #[test]
    fn windows_concatenate() {
        let ab = sieve_window(10, 500).unwrap();
        let bc = sieve_window(500, 900).unwrap();
        let ac = sieve_window(10, 900).unwrap();
        let merged: Vec<u64> =
            ab.primes().iter().chain(bc.primes()).copied().collect();
        assert_eq!(merged, ac.primes());
    }

    #[test]
    fn segmented_matches_across_boundaries() {
        // A window straddling several segments.
        let lo = 3 * SEGMENT_LEN - 100;
        let hi = 3 * SEGMENT_LEN + 100;
        let w = sieve_window(lo, hi).unwrap();
        for &p in w.primes() {
            assert!(crate::arith::is_prime(p));
        }
        for n in lo + 1..=hi {
            if crate::arith::is_prime(n) {
                assert!(w.contains(n), "missing {n}");
            }
        }
    }

    #[test]
    fn theta_progression_examples() {
        // q = 1 sums everything: log 2 + log 3 + log 5 + log 7.
        let want = 2f64.ln() + 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((theta_progression(10, 1, 0).unwrap() - want).abs() < 1e-12);
        // p = 1 (mod 4), p <= 20: 5, 13, 17.
        let want = 5f64.ln() + 13f64.ln() + 17f64.ln();
        assert!((theta_progression(20, 4, 1).unwrap() - want).abs() < 1e-12);
        // single term
        assert!((theta_progression(2, 3, 2).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(theta_progression(100, 6, 3).is_err()); // gcd(6,3) > 1
        assert!(theta_progression(1, 1, 0).is_err());
    }

    #[test]
    fn theta_window_examples() {
        // (100, 10): logs of 41, 43, 47, 53, 59.
        let want: f64 = [41u64, 43, 47, 53, 59].iter().map(|&p| (p as f64).ln()).sum();
        assert!((theta_window(100, 10.0).unwrap() - want).abs() < 1e-12);
        // (12, 1): window (5, 7] holds only 7.
        assert!((theta_window(12, 1.0).unwrap() - 7f64.ln()).abs() < 1e-15);
        assert!(theta_window(12, 5.0).is_err()); // dips below 2
    }

    #[test]
    fn theta_window_equals_theta_difference() {
        for &(n, a) in &[(1000u64, 100.0f64), (10_000, 2500.0), (100_000, 11_111.5)] {
            let w = theta_window(n, a).unwrap();
            let hi = (n as f64 / 2.0 + a).floor() as u64;
            let lo = (n as f64 / 2.0 - a).floor() as u64;
            let diff =
                theta_progression(hi, 1, 0).unwrap() - theta_progression(lo, 1, 0).unwrap();
            assert!((w - diff).abs() <= 1e-9 * w.abs().max(1.0));
        }
    }

    #[test]
    fn theta_term_count_bound() {
        let n = 10_000u64;
        let a = 500.0;
        let w = PrimeWindow::from_real_bounds(n as f64 / 2.0 - a, n as f64 / 2.0 + a).unwrap();
        let theta = theta_window(n, a).unwrap();
        assert!(theta <= (n as f64 / 2.0 + a).ln() * w.len() as f64);
    }

    #[test]
    fn progression_partition_identity() {
        // Sum over coprime classes plus log p over p | q recovers theta(t).
        let t = 100_000u64;
        let total = theta_progression(t, 1, 0).unwrap();
        for q in [2u64, 3, 7, 12, 30, 97, 100] {
            let mut acc = 0.0;
            for r in 0..q {
                if gcd(q, r) == 1 {
                    acc += theta_progression(t, q, r).unwrap();
                }
            }
            for &(p, _) in &crate::arith::factorize(q).unwrap().prime_powers {
                if p <= t {
                    acc += (p as f64).ln();
                }
            }
            assert!((acc - total).abs() <= 1e-9 * total, "q={q}");
        }
    }

    #[test]
    fn scan_reports_max_error() {
        let scan = siegel_walfisz_scan(100_000, 10).unwrap();
        // every row coprime
        for row in &scan.rows {
            assert_eq!(gcd(row.q, row.r), 1);
        }
        // q = 1 row matches theta(t)
        let row1 = scan.rows.iter().find(|r| r.q == 1).unwrap();
        let theta = theta_progression(100_000, 1, 0).unwrap();
        assert!((row1.theta - theta).abs() < 1e-9 * theta);
        assert!(scan.max_normalized_error < 0.2);
        assert!(siegel_walfisz_scan(50, 10).is_err());
    }
}
