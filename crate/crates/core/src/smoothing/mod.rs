//! Randomized smoothing over bitstrings: perturbation sampling, binomial
//! confidence bounds and total-variation certificates.

mod bounds;
mod kernel;

pub use bounds::{clopper_pearson_lower, clopper_pearson_upper, SmoothedEstimate};
pub use kernel::{sample_perturbation, PerturbationSampler, SmoothingKernel};

use crate::error::{Error, Result};
use crate::stateprep::DiscreteDistribution;
use crate::BitString;

/// Total-variation distance between the smoothing laws centred at `0...0`
/// and at the string with its first `r` bits set.
pub fn delta_at_radius(kernel: &SmoothingKernel, r: usize) -> Result<f64> {
    let n = kernel.n();
    if r == 0 || r > n {
        return Err(Error::invalid(format!("radius {r} outside 1..={n}")));
    }
    let base = BitString::zeros(n);
    let shifted = base.flipped(&(0..r).collect::<Vec<_>>());
    kernel
        .distribution(&base)?
        .total_variation(&kernel.distribution(&shifted)?)
}

/// `[Δ(1), ..., Δ(n)]`.
pub fn delta_profile(kernel: &SmoothingKernel) -> Result<Vec<f64>> {
    let n = kernel.n();
    let base_x = BitString::zeros(n);
    let base = kernel.distribution(&base_x)?;
    (1..=n)
        .map(|r| {
            let shifted = base_x.flipped(&(0..r).collect::<Vec<_>>());
            base.total_variation(&kernel.distribution(&shifted)?)
        })
        .collect()
}

/// Largest `r` with `p_lower - Δ(r) > 1/2`, `0` when only `p_lower > 1/2`
/// holds, `-1` (abstain) otherwise. `profile[r - 1]` is `Δ(r)`.
pub fn certified_radius_from_profile(p_lower: f64, profile: &[f64]) -> i64 {
    if !(p_lower > 0.5) {
        return -1;
    }
    profile
        .iter()
        .take_while(|delta| p_lower - **delta > 0.5)
        .count() as i64
}

pub fn certified_radius(p_lower: f64, kernel: &SmoothingKernel) -> Result<i64> {
    if !(0.0..=1.0).contains(&p_lower) {
        return Err(Error::invalid(format!("p_lower {p_lower} outside [0, 1]")));
    }
    if p_lower <= 0.5 {
        return Ok(-1);
    }
    Ok(certified_radius_from_profile(
        p_lower,
        &delta_profile(kernel)?,
    ))
}

/// `E[f(X)]` for `X` drawn from `distribution`.
pub fn exact_smoothed_value(
    distribution: &DiscreteDistribution,
    soft_classifier: impl FnMut(&BitString) -> f64,
) -> f64 {
    distribution.expectation(soft_classifier)
}
