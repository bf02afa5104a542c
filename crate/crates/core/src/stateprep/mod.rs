//! The k-Hamming smoothing distribution and circuits that prepare it.
//!
//! Three preparation routes are provided: exact amplitude loading with
//! uniformly controlled rotations ([`mottonen_circuit`]), a shallow
//! ancilla-per-bit construction ([`hamming_prep_circuit`]) and a
//! single-ancilla uniform mixture ([`uniform_prep_circuit`]).

mod circuits;
mod distribution;
mod mixture;
mod mottonen;

pub use circuits::{
    hamming_prep_circuit, induced_distribution, uniform_prep_circuit, uniform_prep_law,
};
pub use distribution::{DiscreteDistribution, ENUMERATION_LIMIT};
pub use mixture::{dicke_network, hamming_mixture_circuit, independent_flip_circuit};
pub use mottonen::mottonen_circuit;

use crate::bits::{binomial, BitString};
use crate::error::{Error, Result};

/// Parameters of the smoothing law: bit length `n`, maximum flip distance
/// `k` and decay scale `sigma`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HammingNoiseSpec {
    pub n: usize,
    pub k: usize,
    pub sigma: f64,
}

impl HammingNoiseSpec {
    pub fn new(n: usize, k: usize, sigma: f64) -> Result<Self> {
        if k > n {
            return Err(Error::invalid(format!("k = {k} exceeds n = {n}")));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::invalid(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        Ok(HammingNoiseSpec { n, k, sigma })
    }
}

/// Normalized weight `w(i)` of each distance `0..=k`, proportional to `exp(-i/sigma)`.
pub fn hamming_weights(spec: &HammingNoiseSpec) -> Result<Vec<f64>> {
    let spec = HammingNoiseSpec::new(spec.n, spec.k, spec.sigma)?;
    let raw: Vec<f64> = (0..=spec.k)
        .map(|i| (-(i as f64) / spec.sigma).exp())
        .collect();
    let total: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|w| w / total).collect())
}

/// Probability of one particular string at distance `i`: `w(i) / C(n, i)`.
pub fn hamming_point_probability(spec: &HammingNoiseSpec, i: usize) -> Result<f64> {
    if i > spec.k {
        return Err(Error::invalid(format!(
            "distance {i} exceeds k = {}",
            spec.k
        )));
    }
    let w = hamming_weights(spec)?;
    Ok(w[i] / binomial(spec.n, i))
}

/// The exact smoothing law around `x`.
pub fn target_distribution(spec: &HammingNoiseSpec, x: &BitString) -> Result<DiscreteDistribution> {
    if x.len() != spec.n {
        return Err(Error::DimensionMismatch {
            expected: spec.n,
            found: x.len(),
        });
    }
    distribution::check_enumerable(spec.n)?;
    let per_distance: Vec<f64> = (0..=spec.k)
        .map(|i| hamming_point_probability(spec, i))
        .collect::<Result<_>>()?;
    let center = x.to_index();
    let probs = (0..1usize << spec.n)
        .map(|idx| {
            let d = (idx ^ center).count_ones() as usize;
            per_distance.get(d).copied().unwrap_or(0.0)
        })
        .collect();
    DiscreteDistribution::new(spec.n, probs)
}
