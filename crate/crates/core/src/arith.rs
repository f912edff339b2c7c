//! Exact integer arithmetic: factorization, the Möbius function, Euler's
//! totient, and Ramanujan sums C_q(m) in both closed form and as the defining
//! exponential sum.

use crate::error::{Error, Result};
use crate::numeric::e_unit;
use num_complex::Complex64;

/// Canonical prime factorization of a positive integer.
///
/// `prime_powers` is sorted by prime; `factorize(1)` yields an empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    pub prime_powers: Vec<(u64, u32)>,
}

impl Factorization {
    /// Distinct primes dividing the value.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.prime_powers.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.prime_powers.iter().all(|&(_, e)| e == 1)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for u64. The witness set covers the full
/// 64-bit range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle variant of Pollard rho. `n` must be odd, composite and free
/// of factors below the trial-division bound.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn factor_into(n: u64, out: &mut Vec<(u64, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push((n, 1));
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Factor n >= 1. Trial division up to 10^6, then deterministic primality
/// plus rho splitting for what remains; exact for all of u64.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero("n"));
    }
    let value = n;
    let mut n = n;
    let mut prime_powers: Vec<(u64, u32)> = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && d * d <= n {
        if n % d == 0 {
            let mut e = 0u32;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            prime_powers.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if d * d > n {
            prime_powers.push((n, 1));
        } else {
            let mut rest = Vec::new();
            factor_into(n, &mut rest);
            rest.sort_unstable();
            let mut i = 0;
            while i < rest.len() {
                let p = rest[i].0;
                let mut e = 0u32;
                while i < rest.len() && rest[i].0 == p {
                    e += rest[i].1;
                    i += 1;
                }
                prime_powers.push((p, e));
            }
        }
    }
    Ok(Factorization { value, prime_powers })
}

/// Möbius function: 0 on non-squarefree n, else (-1)^(#prime factors).
pub fn mobius(n: u64) -> Result<i32> {
    let f = factorize(n)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.prime_powers.len() % 2 == 0 { 1 } else { -1 })
}

/// Euler's totient via the factorization.
pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    let mut phi = 1u64;
    for &(p, e) in &f.prime_powers {
        phi *= p.pow(e - 1) * (p - 1);
    }
    Ok(phi)
}

/// Ramanujan sum C_q(m) by the closed form
/// C_q(m) = mu(q/g) * phi(q) / phi(q/g) with g = gcd(|m|, q), gcd(0, q) = q.
///
/// Negative m is allowed; the value depends only on |m| mod q.
pub fn ramanujan_sum(q: u64, m: i64) -> Result<i64> {
    if q == 0 {
        return Err(Error::Zero("q"));
    }
    let g = gcd(m.unsigned_abs() % q, q);
    let g = if g == 0 { q } else { g };
    let reduced = q / g;
    let mu = mobius(reduced)?;
    if mu == 0 {
        return Ok(0);
    }
    let phi_q = euler_phi(q)?;
    let phi_r = euler_phi(reduced)?;
    // phi(q/g) divides phi(q) since q/g | q.
    Ok(mu as i64 * (phi_q / phi_r) as i64)
}

const ROUNDING_TOL: f64 = 1e-6;

/// Ramanujan sum straight from the definition: sum of e(m*a/q) over the
/// residues a coprime to q. Oracle-scale only (q up to ~10^6); the
/// accumulated sum is checked to be an integer to within 1e-6 and rounded.
pub fn ramanujan_sum_bruteforce(q: u64, m: i64) -> Result<i64> {
    if q == 0 {
        return Err(Error::Zero("q"));
    }
    let m_red = m.rem_euclid(q as i64) as u64;
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        if gcd(a, q) == 1 {
            acc += e_unit((m_red * a % q) as f64 / q as f64);
        }
    }
    if acc.im.abs() > ROUNDING_TOL {
        return Err(Error::ImaginaryResidue { imag: acc.im, tol: ROUNDING_TOL });
    }
    let rounded = acc.re.round();
    let dist = (acc.re - rounded).abs();
    if dist > ROUNDING_TOL {
        return Err(Error::RoundingFailure { value: acc.re, dist });
    }
    Ok(rounded as i64)
}

/// Linear sieve of phi and mu up to `limit` inclusive. Index 0 is unused.
pub(crate) fn phi_mu_tables(limit: usize) -> (Vec<u32>, Vec<i8>) {
    let mut phi = vec![0u32; limit + 1];
    let mut mu = vec![0i8; limit + 1];
    if limit >= 1 {
        phi[1] = 1;
        mu[1] = 1;
    }
    let mut primes: Vec<usize> = Vec::new();
    let mut is_comp = vec![false; limit + 1];
    for i in 2..=limit {
        if !is_comp[i] {
            primes.push(i);
            phi[i] = (i - 1) as u32;
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            is_comp[ip] = true;
            if i % p == 0 {
                phi[ip] = phi[i] * p as u32;
                mu[ip] = 0;
                break;
            }
            phi[ip] = phi[i] * (p - 1) as u32;
            mu[ip] = -mu[i];
        }
    }
    (phi, mu)
}
