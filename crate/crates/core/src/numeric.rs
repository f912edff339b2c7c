//! Small floating-point helpers: the unit phase e(x), reductions mod 1,
//! and deterministic pairwise summation.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// e(x) = exp(2*pi*i*x). The argument is reduced to [-1/2, 1/2] before
/// scaling by 2*pi, which keeps the phase accurate for large |x| and makes
/// e(-x) the exact conjugate of e(x).
#[inline]
pub fn e_unit(x: f64) -> Complex64 {
    let r = x - x.round();
    let (sin, cos) = (TAU * r).sin_cos();
    Complex64::new(cos, sin)
}

/// Fractional part of a*b in [-1/2, 1/2]. The product is split with an FMA
/// so the low-order bits survive the mod-1 reduction even when a*b is far
/// above 2^32; for arguments of desk scale (a in [0,1], b up to ~2^50) the
/// result is exact to within a few ulps of the true reduced phase.
#[inline]
pub fn frac_product(a: f64, b: f64) -> f64 {
    let hi = a * b;
    let lo = a.mul_add(b, -hi);
    let r = (hi - hi.round()) + lo;
    r - r.round()
}

/// a*b reduced mod 2 into [-1, 1], same FMA splitting as `frac_product`.
/// Used for arguments of sin(pi * x), which has period 2 in x.
#[inline]
pub fn half_frac_product(a: f64, b: f64) -> f64 {
    let hi = a * b;
    let lo = a.mul_add(b, -hi);
    let r = (hi - 2.0 * (0.5 * hi).round()) + lo;
    r - 2.0 * (0.5 * r).round()
}

const PAIRWISE_BASE: usize = 128;

/// Pairwise (tree) summation. Deterministic for a fixed input order and
/// noticeably more accurate than a running sum on long cancellative inputs.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= PAIRWISE_BASE {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Complex counterpart of [`pairwise_sum`].
pub fn pairwise_sum_complex(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= PAIRWISE_BASE {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum_complex(&xs[..mid]) + pairwise_sum_complex(&xs[mid..])
}

/// Pairwise summation of f(i) over i in [lo, hi) without materializing the
/// terms.
pub fn pairwise_sum_by<F: Fn(usize) -> Complex64>(lo: usize, hi: usize, f: &F) -> Complex64 {
    if hi - lo <= PAIRWISE_BASE {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in lo..hi {
            acc += f(i);
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    pairwise_sum_by(lo, mid, f) + pairwise_sum_by(mid, hi, f)
}
