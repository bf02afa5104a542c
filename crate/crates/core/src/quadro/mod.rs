//! Amplitude estimation of the smoothed class-1 probability.
//!
//! `A` prepares the smoothed input, runs the classifier and copies its
//! output onto a flag qubit, so that `a = P(flag = 1)`. Iterative phase
//! estimation on the Grover operator of `A` recovers `a = sin^2(pi * phi)`
//! with quadratically fewer oracle calls than sampling.

mod grover;
mod iqpe;

pub use grover::{
    build_grover_operator, grover_operator, reflection_about_zero, state_preparation,
};
pub use iqpe::{amplitude_from_phase, iqpe_phase, write_trace_csv, IterationRecord, PhaseEstimate};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::seed::derive_seed;
use crate::simulator::Circuit;
use crate::smoothing::SmoothedEstimate;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QaeConfig {
    /// Phase bits.
    pub m: usize,
    pub shots_per_bit: u64,
    /// Independent runs whose median is reported; odd.
    pub repetitions: usize,
    pub alpha: f64,
    pub seed: u64,
}

impl QaeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::invalid("at least one phase bit is required"));
        }
        if self.m > 20 {
            return Err(Error::invalid(format!(
                "{} phase bits is impractical",
                self.m
            )));
        }
        if self.shots_per_bit == 0 {
            return Err(Error::invalid("shots_per_bit must be positive"));
        }
        if self.repetitions == 0 || self.repetitions % 2 == 0 {
            return Err(Error::invalid("repetitions must be odd"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::invalid("alpha must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// Oracle-call accounting for one phase-estimation run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// `2^(m+1) - 1`, the textbook budget for `m` phase qubits.
    pub nominal: u64,
    /// Grover applications used by the iterative scheme: `shots * (2^m - 1)`.
    pub grover_applications: u64,
    /// Classifier invocations: two per Grover application.
    pub classifier_calls: u64,
}

pub fn oracle_call_budget(m: usize, shots_per_bit: u64) -> Result<OracleBudget> {
    if m == 0 || m > 62 {
        return Err(Error::invalid(format!(
            "phase bits must be in 1..=62, got {m}"
        )));
    }
    let grover = shots_per_bit * ((1u64 << m) - 1);
    Ok(OracleBudget {
        nominal: (1u64 << (m + 1)) - 1,
        grover_applications: grover,
        classifier_calls: 2 * grover,
    })
}

/// Median estimate with its two-sided phase-grid bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadroOutcome {
    pub estimate: SmoothedEstimate,
    /// `sin^2(pi * min(0.5, phi + 2^-m))` for the folded median phase.
    pub p_upper: f64,
    pub runs: Vec<PhaseEstimate>,
}

/// Folds a phase into `[0, 0.5]`, where `sin^2(pi * phi)` is increasing.
pub fn fold_phase(phi: f64) -> f64 {
    phi.min(1.0 - phi)
}

/// Median-of-runs amplitude estimate of `P(output = 1)` after `prep` then `classifier`.
pub fn quadro_run(
    prep: &Circuit,
    classifier: &Circuit,
    output_qubit: usize,
    config: &QaeConfig,
) -> Result<QuadroOutcome> {
    config.validate()?;
    let a = state_preparation(prep, classifier, output_qubit)?;
    let flag = a.num_qubits() - 1;
    let q = grover_operator(&a, flag)?;
    let runs: Vec<PhaseEstimate> = (0..config.repetitions)
        .into_par_iter()
        .map(|r| {
            iqpe_phase(
                &q,
                &a,
                config.m,
                config.shots_per_bit,
                derive_seed(config.seed, r as u64),
            )
        })
        .collect::<Result<_>>()?;
    summarize(runs, config)
}

fn summarize(runs: Vec<PhaseEstimate>, config: &QaeConfig) -> Result<QuadroOutcome> {
    let mut folded: Vec<f64> = runs.iter().map(|r| fold_phase(r.phi_hat)).collect();
    folded.sort_by(f64::total_cmp);
    let median = folded[folded.len() / 2];
    let step = 0.5f64.powi(config.m as i32);
    let p_hat = amplitude_from_phase(median);
    let p_lower = amplitude_from_phase((median - step).max(0.0));
    let p_upper = amplitude_from_phase((median + step).min(0.5));
    let budget = oracle_call_budget(config.m, config.shots_per_bit)?;
    let reps = config.repetitions as u64;
    Ok(QuadroOutcome {
        estimate: SmoothedEstimate {
            p_hat,
            p_lower,
            alpha: config.alpha,
            trials: reps * config.m as u64 * config.shots_per_bit,
            oracle_calls: reps * budget.grover_applications,
        },
        p_upper,
        runs,
    })
}

pub fn quadro_estimate(
    prep: &Circuit,
    classifier: &Circuit,
    output_qubit: usize,
    config: &QaeConfig,
) -> Result<SmoothedEstimate> {
    Ok(quadro_run(prep, classifier, output_qubit, config)?.estimate)
}

#[cfg(test)]
mod tests;
