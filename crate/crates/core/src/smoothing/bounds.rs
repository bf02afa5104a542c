use statrs::function::beta::beta_reg;

use crate::error::{Error, Result};

/// A smoothed class-1 probability with its one-sided lower bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothedEstimate {
    pub p_hat: f64,
    pub p_lower: f64,
    pub alpha: f64,
    pub trials: u64,
    pub oracle_calls: u64,
}

impl SmoothedEstimate {
    pub fn from_counts(successes: u64, trials: u64, alpha: f64, oracle_calls: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::invalid("zero trials"));
        }
        let p_lower = clopper_pearson_lower(successes, trials, alpha)?;
        Ok(SmoothedEstimate {
            p_hat: successes as f64 / trials as f64,
            p_lower,
            alpha,
            trials,
            oracle_calls: oracle_calls.max(trials),
        })
    }
}

fn check(successes: u64, trials: u64, alpha: f64) -> Result<()> {
    if successes > trials {
        return Err(Error::invalid(format!(
            "{successes} successes in {trials} trials"
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// One-sided Clopper-Pearson lower bound: the `alpha` quantile of
/// `Beta(successes, trials - successes + 1)`.
pub fn clopper_pearson_lower(successes: u64, trials: u64, alpha: f64) -> Result<f64> {
    check(successes, trials, alpha)?;
    if successes == 0 {
        return Ok(0.0);
    }
    let a = successes as f64;
    let b = (trials - successes) as f64 + 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    // The regularized incomplete beta is increasing in x.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if beta_reg(a, b, mid) < alpha {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(lo)
}

/// One-sided upper bound, by symmetry with the failures.
pub fn clopper_pearson_upper(successes: u64, trials: u64, alpha: f64) -> Result<f64> {
    check(successes, trials, alpha)?;
    Ok(1.0 - clopper_pearson_lower(trials - successes, trials, alpha)?)
}
