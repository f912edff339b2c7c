//! The singular series D(N) and G(N), evaluated two independent ways: as a
//! truncated sum over moduli q (with the odd/even split for D) and as a
//! truncated Euler product, each carrying an explicit bound on what the
//! truncation discards.

use crate::arith::{self, gcd};
use crate::error::{Error, Result};
use crate::primes;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// How a singular-series value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Method {
    Series,
    Euler,
}

/// A singular-series evaluation.
///
/// For `Series` the truncation is the largest modulus Q kept and `tail_bound`
/// overestimates the absolute value of everything dropped. For `Euler` the
/// truncation is the prime cutoff P and `tail_bound` bounds the *relative*
/// effect of the omitted factors.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SingularValue {
    pub n: u64,
    pub value: f64,
    pub method: Method,
    pub truncation: u64,
    pub tail_bound: f64,
}

/// Largest modulus covered exactly by the series tail table; beyond it a
/// fixed 1e-6 overestimate is added.
const TAIL_TABLE_LIMIT: usize = 10_000_000;
const TAIL_BEYOND_TABLE: f64 = 1e-6;

fn phi_table_1e7() -> &'static Vec<u32> {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| arith::phi_mu_tables(TAIL_TABLE_LIMIT).0)
}

/// Overestimate of sum over q > Q of 1/phi(q)^2: the exact sum up to 10^7
/// plus 1e-6 for the rest. Every dropped series term is bounded by
/// 1/phi(q)^2 in absolute value, so this bounds the truncation error of
/// both D and G partial sums. Cached per Q.
pub fn series_tail_bound(q_max: u64) -> f64 {
    static CACHE: OnceLock<Mutex<HashMap<u64, f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().unwrap().get(&q_max) {
        return v;
    }
    let phi = phi_table_1e7();
    let mut acc = 0.0f64;
    let start = (q_max as usize).saturating_add(1);
    // descending order: smallest terms first
    for q in (start..=TAIL_TABLE_LIMIT).rev() {
        let f = phi[q] as f64;
        acc += 1.0 / (f * f);
    }
    let bound = acc + TAIL_BEYOND_TABLE;
    cache.lock().unwrap().insert(q_max, bound);
    bound
}

/// C_q(-N) from sieve tables, valid for squarefree q <= table limit.
fn ramanujan_minus_n(q: usize, n: u64, phi: &[u32], mu: &[i8]) -> i64 {
    let g = gcd(n % q as u64, q as u64) as usize;
    let g = if g == 0 { q } else { g };
    let reduced = q / g;
    let m = mu[reduced] as i64;
    if m == 0 {
        return 0;
    }
    m * (phi[q] / phi[reduced]) as i64
}

fn check_even_n(n: u64) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::OddN(n));
    }
    if n < 4 {
        return Err(Error::InvalidParameter(format!("N = {n} below 4")));
    }
    Ok(())
}

fn series_sums(n: u64, q_max: u64) -> Result<(f64, f64)> {
    if q_max == 0 {
        return Err(Error::Zero("Q"));
    }
    let (phi, mu) = arith::phi_mu_tables(q_max as usize);
    let mut odd_sum = 0.0f64;
    let mut even_sum = 0.0f64;
    for q in 1..=q_max as usize {
        if mu[q] == 0 {
            continue;
        }
        let c = ramanujan_minus_n(q, n, &phi, &mu);
        let f = phi[q] as f64;
        let term = mu[q] as f64 * c as f64 / (f * f * f);
        if q % 2 == 1 {
            odd_sum += term;
        } else {
            even_sum += term;
        }
    }
    Ok((odd_sum, even_sum))
}

/// D(N, Q): the sum of mu(q) C_q(-N) / phi(q)^3 over odd q <= Q minus the
/// same sum over even q <= Q.
pub fn d_series(n: u64, q_max: u64) -> Result<SingularValue> {
    check_even_n(n)?;
    let (odd_sum, even_sum) = series_sums(n, q_max)?;
    Ok(SingularValue {
        n,
        value: odd_sum - even_sum,
        method: Method::Series,
        truncation: q_max,
        tail_bound: series_tail_bound(q_max),
    })
}

/// G(N, Q): the plain partial sum over all q <= Q. Converges to 0 for even N.
pub fn g_series(n: u64, q_max: u64) -> Result<SingularValue> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("N = {n} below 3")));
    }
    let (odd_sum, even_sum) = series_sums(n, q_max)?;
    Ok(SingularValue {
        n,
        value: odd_sum + even_sum,
        method: Method::Series,
        truncation: q_max,
        tail_bound: series_tail_bound(q_max),
    })
}

/// Safety factor 10 over the crude tail estimate 2/P^2 for the omitted
/// log-factors; a relative bound.
fn euler_tail_bound(p_max: u64) -> f64 {
    20.0 / (p_max as f64 * p_max as f64)
}

const LOG_SPACE_THRESHOLD: u64 = 10_000;

/// Sum over primes p <= P of log(1 + 1/(p-1)^3), including p = 2. Cached
/// per P since it does not depend on N.
fn log_factor_sum(p_max: u64) -> f64 {
    static CACHE: OnceLock<Mutex<HashMap<u64, f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().unwrap().get(&p_max) {
        return v;
    }
    let window = primes::sieve_window(1, p_max).expect("p_max >= 2");
    let terms: Vec<f64> = window
        .primes()
        .iter()
        .map(|&p| {
            let d = (p - 1) as f64;
            (1.0 / (d * d * d)).ln_1p()
        })
        .collect();
    let sum = crate::numeric::pairwise_sum(&terms);
    cache.lock().unwrap().insert(p_max, sum);
    sum
}

fn odd_prime_factors_checked(n: u64, p_max: u64) -> Result<Vec<u64>> {
    let f = arith::factorize(n)?;
    if let Some(p) = f.primes().find(|&p| p > p_max) {
        return Err(Error::TruncationTooSmall { p_max, factor: p, n });
    }
    Ok(f.primes().filter(|&p| p % 2 == 1).collect())
}

fn one_plus(p: u64) -> f64 {
    let d = (p - 1) as f64;
    1.0 + 1.0 / (d * d * d)
}

fn one_minus(p: u64) -> f64 {
    let d = (p - 1) as f64;
    1.0 - 1.0 / (d * d)
}

/// D(N) by Euler product:
/// 2 * prod over odd p | N of (1 - 1/(p-1)^2) * prod over p <= P, p not
/// dividing N of (1 + 1/(p-1)^3). The N-independent part accumulates in
/// log-space above P = 10^4.
pub fn d_euler(n: u64, p_max: u64) -> Result<SingularValue> {
    check_even_n(n)?;
    let odd_divisors = odd_prime_factors_checked(n, p_max)?;
    let finite: f64 = 2.0 * odd_divisors.iter().map(|&p| one_minus(p)).product::<f64>();
    let rest = if p_max > LOG_SPACE_THRESHOLD {
        // all primes <= P except 2 (which divides even N) and the odd p | N
        let mut log_sum = log_factor_sum(p_max) - 2.0f64.ln();
        for &p in &odd_divisors {
            log_sum -= one_plus(p).ln();
        }
        log_sum.exp()
    } else if p_max < 3 {
        1.0
    } else {
        let window = primes::sieve_window(2, p_max)?;
        window
            .primes()
            .iter()
            .filter(|&&p| !odd_divisors.contains(&p))
            .map(|&p| one_plus(p))
            .product()
    };
    Ok(SingularValue {
        n,
        value: finite * rest,
        method: Method::Euler,
        truncation: p_max,
        tail_bound: euler_tail_bound(p_max),
    })
}

/// G(N) by Euler product. Exactly 0 for even N: the factor at p = 2 is
/// 1 - 1/(2-1)^2 = 0.
pub fn g_euler(n: u64, p_max: u64) -> Result<SingularValue> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("N = {n} below 3")));
    }
    if n % 2 == 0 {
        return Ok(SingularValue {
            n,
            value: 0.0,
            method: Method::Euler,
            truncation: p_max,
            tail_bound: 0.0,
        });
    }
    let divisors = odd_prime_factors_checked(n, p_max)?; // all of them: N odd
    let finite: f64 = divisors.iter().map(|&p| one_minus(p)).product();
    let rest = if p_max > LOG_SPACE_THRESHOLD {
        let mut log_sum = log_factor_sum(p_max);
        for &p in &divisors {
            log_sum -= one_plus(p).ln();
        }
        log_sum.exp()
    } else {
        let window = primes::sieve_window(1, p_max)?;
        window
            .primes()
            .iter()
            .filter(|&&p| !divisors.contains(&p))
            .map(|&p| one_plus(p))
            .product()
    };
    Ok(SingularValue {
        n,
        value: finite * rest,
        method: Method::Euler,
        truncation: p_max,
        tail_bound: euler_tail_bound(p_max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Truncated-product oracle: plain sequential product, no log-space, no
    // caching. Independent route against d_euler/g_euler.
    fn euler_product_oracle(n: u64, p_max: u64) -> f64 {
        let window = primes::sieve_window(1, p_max).unwrap();
        let mut acc = if n % 2 == 0 { 2.0 } else { 1.0 };
        for &p in window.primes() {
            if n % 2 == 0 && p == 2 {
                continue;
            }
            acc *= if n % p == 0 { one_minus(p) } else { one_plus(p) };
        }
        acc
    }

    #[test]
    fn d_series_single_term_is_one() {
        for n in [4u64, 30, 100, 9976] {
            assert_eq!(d_series(n, 1).unwrap().value, 1.0);
        }
    }

    #[test]
    fn d_series_two_terms_hand_value() {
        // q = 1 contributes 1; q = 2 has C_2(-30) = 1, mu = -1, phi^3 = 1,
        // and the even sum is subtracted: 1 - (-1) = 2.
        assert_eq!(d_series(30, 2).unwrap().value, 2.0);
    }

    #[test]
    fn d_series_rejects_odd_and_small() {
        assert!(matches!(d_series(31, 10), Err(Error::OddN(31))));
        assert!(d_series(2, 10).is_err());
        assert!(d_series(30, 0).is_err());
    }

    #[test]
    fn d_euler_matches_product_oracle() {
        for &(n, p_max) in &[(30u64, 1000u64), (30, 100_000), (1024, 100_000), (9976, 20_000)] {
            let got = d_euler(n, p_max).unwrap().value;
            let want = euler_product_oracle(n, p_max);
            assert!(
                (got - want).abs() <= 1e-12 * want,
                "n={n} P={p_max}: got {got} want {want}"
            );
        }
    }

    #[test]
    fn d_euler_known_values() {
        // D(30): finite part 2 * (3/4)(15/16) = 45/32, tail product ~ 1.0069.
        let d30 = d_euler(30, 100_000).unwrap().value;
        assert!((d30 - 1.4160).abs() < 5e-4, "d30 = {d30}");
        // No odd prime divides 2^k.
        let d1024 = d_euler(1024, 100_000).unwrap().value;
        assert!((d1024 - 2.3010).abs() < 5e-4, "d1024 = {d1024}");
    }

    #[test]
    fn d_euler_rejects_insufficient_truncation() {
        assert!(matches!(
            d_euler(2 * 1_000_003, 1000),
            Err(Error::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn d_euler_monotone_refinement() {
        let p = 10_000u64;
        let coarse = d_euler(30, p).unwrap();
        let fine = d_euler(30, 10 * p).unwrap();
        assert!((coarse.value - fine.value).abs() < coarse.tail_bound * coarse.value);
    }

    #[test]
    fn g_euler_vanishes_for_even_n() {
        for n in [4u64, 30, 100, 65536, 123456] {
            assert_eq!(g_euler(n, 1000).unwrap().value, 0.0);
        }
    }

    #[test]
    fn g_euler_odd_value() {
        let g15 = g_euler(15, 100_000).unwrap().value;
        assert!(g15 > 0.0);
        let want = euler_product_oracle(15, 100_000);
        assert!((g15 - want).abs() <= 1e-12 * want);
        // (1 - 1/4)(1 - 1/16) times a product that includes the factor 2 at p = 2
        assert!(g15 > 0.75 * 0.9375 * 2.0 && g15 < 0.75 * 0.9375 * 2.0 * 1.2);
    }

    #[test]
    fn g_series_partial_sums_shrink_for_even_n() {
        let coarse = g_series(30, 100).unwrap();
        let fine = g_series(30, 2000).unwrap();
        assert!(fine.value.abs() <= fine.tail_bound);
        assert!(fine.value.abs() < coarse.value.abs() + coarse.tail_bound);
    }

    #[test]
    fn term_size_bound() {
        // |mu(q) C_q(-N) / phi^3(q)| <= 1/phi^2(q)
        let (phi, mu) = arith::phi_mu_tables(10_000);
        for n in [30u64, 100, 9976] {
            for q in 1..=10_000usize {
                if mu[q] == 0 {
                    continue;
                }
                let c = ramanujan_minus_n(q, n, &phi, &mu);
                let f = phi[q] as f64;
                assert!((mu[q] as f64 * c as f64 / (f * f * f)).abs() <= 1.0 / (f * f) + 1e-15);
            }
        }
    }

    #[test]
    fn d_depends_only_on_odd_radical() {
        // D(N) = D(2 * rad_odd(N))
        for &(n, rad) in &[(360u64, 30u64), (1024, 2), (2 * 27 * 25, 2 * 15), (4 * 49, 2 * 7)] {
            let a = d_euler(n, 50_000).unwrap().value;
            let b = d_euler(rad, 50_000).unwrap().value;
            assert!((a - b).abs() < 1e-12 * a.abs());
        }
    }

    #[test]
    fn cross_method_agreement_spot() {
        for n in [30u64, 100, 128, 4950, 99_990] {
            let s = d_series(n, 10_000).unwrap();
            let e = d_euler(n, 1_000_000).unwrap();
            let combined = s.tail_bound + e.tail_bound * e.value.abs();
            assert!(
                (s.value - e.value).abs() <= combined,
                "n={n}: series {} euler {} tol {combined}",
                s.value,
                e.value
            );
        }
    }

    #[test]
    fn tail_bound_decreases() {
        let t1 = series_tail_bound(100);
        let t2 = series_tail_bound(10_000);
        assert!(t2 < t1);
        assert!(t2 < 1e-3);
        assert!(t2 > 0.0);
    }
}
