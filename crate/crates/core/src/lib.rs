//! Circle-method machinery for the weighted count R(N, A) of representations
//! N = p1 + p2 + 2*p3 with p1, p2 in a window of half-width A around N/2 and
//! odd p3 <= A.
//!
//! The library evaluates every computable object in that story — singular
//! series, major/minor arc geometry, prime exponential sums, and the
//! representation counts themselves — by at least two independent routes
//! each, so that the routes can be checked against one another numerically.

pub mod arith;
pub mod circle;
pub mod counting;
pub mod error;
pub mod expsums;
pub mod numeric;
pub mod primes;
pub mod singular;
pub mod verify;

pub use circle::{classify, dirichlet_approx, enumerate_major_arcs, ArcPartition, CircleParams};
pub use counting::{count_j_direct, count_r_convolution, count_r_direct, r_via_dft, RepCount};
pub use error::{Error, Result};
pub use primes::{sieve_window, theta_progression, theta_window, PrimeWindow};
pub use singular::{d_euler, d_series, g_euler, g_series, SingularValue};
pub use verify::{run_verify, VerifyOptions, VerifyReport};

/// Memory budget for the large scratch arrays (convolution buffers, DFT
/// grids), in MiB. Override with the CIRCLE_MEM_BUDGET_MB environment
/// variable.
pub fn memory_budget_mib() -> u64 {
    std::env::var("CIRCLE_MEM_BUDGET_MB")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(4096)
}

pub(crate) fn check_budget(bytes: u64) -> Result<()> {
    let budget = memory_budget_mib();
    let need = bytes.div_ceil(1 << 20);
    if need > budget {
        return Err(Error::Capacity { need_mib: need, budget_mib: budget });
    }
    Ok(())
}
