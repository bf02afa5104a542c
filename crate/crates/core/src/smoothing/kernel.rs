use std::f64::consts::PI;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::seed::{rng_from_seed, Rng};
use crate::simulator::{Circuit, Gate};
use crate::stateprep::{
    hamming_mixture_circuit, hamming_prep_circuit, hamming_weights, independent_flip_circuit,
    induced_distribution, mottonen_circuit, target_distribution, uniform_prep_circuit,
    uniform_prep_law, DiscreteDistribution, HammingNoiseSpec,
};
use crate::BitString;

/// Which smoothing law is applied around an input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SmoothingKernel {
    /// The exact k-Hamming law, loaded by amplitude encoding.
    Hamming(HammingNoiseSpec),
    /// The law induced by the shallow one-ancilla-per-bit circuit.
    ShallowCircuit { n: usize, sigma: f64 },
    /// Point mass mixed with the uniform law through one ancilla.
    Uniform { n: usize, sigma: f64 },
}

impl SmoothingKernel {
    pub fn hamming(n: usize, k: usize, sigma: f64) -> Result<Self> {
        Ok(SmoothingKernel::Hamming(HammingNoiseSpec::new(
            n, k, sigma,
        )?))
    }

    pub fn shallow_circuit(n: usize, sigma: f64) -> Result<Self> {
        check_circuit_params(n, sigma)?;
        Ok(SmoothingKernel::ShallowCircuit { n, sigma })
    }

    pub fn uniform(n: usize, sigma: f64) -> Result<Self> {
        check_circuit_params(n, sigma)?;
        Ok(SmoothingKernel::Uniform { n, sigma })
    }

    pub fn n(&self) -> usize {
        match *self {
            SmoothingKernel::Hamming(spec) => spec.n,
            SmoothingKernel::ShallowCircuit { n, .. } | SmoothingKernel::Uniform { n, .. } => n,
        }
    }

    /// Qubits used by [`Self::prep_circuit`] beyond the `n` data qubits.
    pub fn ancilla_count(&self) -> usize {
        match *self {
            SmoothingKernel::Hamming(_) => 0,
            SmoothingKernel::ShallowCircuit { n, .. } => n,
            SmoothingKernel::Uniform { .. } => 1,
        }
    }

    fn check_input(&self, x: &BitString) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// The full outcome table centred at `x`.
    pub fn distribution(&self, x: &BitString) -> Result<DiscreteDistribution> {
        self.check_input(x)?;
        match *self {
            SmoothingKernel::Hamming(spec) => target_distribution(&spec, x),
            SmoothingKernel::ShallowCircuit { n, sigma } => {
                let data: Vec<usize> = (0..n).collect();
                induced_distribution(&hamming_prep_circuit(x, sigma)?, &data)
            }
            SmoothingKernel::Uniform { sigma, .. } => uniform_prep_law(x, sigma),
        }
    }

    /// The kernel's own preparation circuit; data on `0..n`, ancillas after.
    /// Its data marginal equals [`Self::distribution`], but the data register
    /// is generally left in a coherent superposition, so a classifier applied
    /// afterwards does not see the mixture. See [`Self::mixture_prep_circuit`].
    pub fn prep_circuit(&self, x: &BitString) -> Result<Circuit> {
        self.check_input(x)?;
        match *self {
            SmoothingKernel::Hamming(spec) => mottonen_circuit(&target_distribution(&spec, x)?),
            SmoothingKernel::ShallowCircuit { sigma, .. } => hamming_prep_circuit(x, sigma),
            SmoothingKernel::Uniform { sigma, .. } => uniform_prep_circuit(x, sigma),
        }
    }

    /// Prepares [`Self::distribution`] on `0..n` with each perturbation
    /// recorded on ancillas `n..2n`. The record purifies the state, so the
    /// data register carries exactly the classical mixture and P(output = 1)
    /// after a classifier equals the smoothed value. Hamming and shallow laws
    /// use linear-size loaders; the uniform law is amplitude-loaded and copied.
    pub fn mixture_prep_circuit(&self, x: &BitString) -> Result<Circuit> {
        self.check_input(x)?;
        match *self {
            SmoothingKernel::Hamming(spec) => hamming_mixture_circuit(&spec, x),
            SmoothingKernel::ShallowCircuit { sigma, .. } => {
                independent_flip_circuit(x, (sigma * PI / 2.0).sin().powi(2) / 2.0)
            }
            SmoothingKernel::Uniform { n, .. } => {
                let mut c = mottonen_circuit(&self.distribution(x)?)?.widened(2 * n)?;
                for i in 0..n {
                    c.push(Gate::cnot(i, n + i))?;
                }
                Ok(c)
            }
        }
    }

    pub fn sampler(&self, x: &BitString) -> Result<PerturbationSampler> {
        self.check_input(x)?;
        match *self {
            SmoothingKernel::Hamming(spec) => PerturbationSampler::hamming(&spec, x),
            SmoothingKernel::ShallowCircuit { .. } => {
                let table = self.distribution(x)?;
                let index =
                    WeightedIndex::new(table.probs()).map_err(|e| Error::invalid(e.to_string()))?;
                Ok(PerturbationSampler::Table { n: x.len(), index })
            }
            SmoothingKernel::Uniform { sigma, .. } => Ok(PerturbationSampler::Mixture {
                center: x.clone(),
                stay: (sigma * std::f64::consts::FRAC_PI_2).cos().powi(2),
            }),
        }
    }
}

fn check_circuit_params(n: usize, sigma: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if !(0.0..=1.0).contains(&sigma) {
        return Err(Error::invalid(format!(
            "sigma must lie in [0, 1], got {sigma}"
        )));
    }
    Ok(())
}

/// Draws perturbed copies of a fixed input.
#[derive(Clone, Debug)]
pub enum PerturbationSampler {
    /// Distance drawn from the weights, then a uniform subset of that size flipped.
    Distance {
        center: BitString,
        distance: WeightedIndex<f64>,
    },
    /// Keep the centre with probability `stay`, otherwise a uniform string.
    Mixture { center: BitString, stay: f64 },
    /// Direct draw from an enumerated table.
    Table { n: usize, index: WeightedIndex<f64> },
}

impl PerturbationSampler {
    pub fn hamming(spec: &HammingNoiseSpec, x: &BitString) -> Result<Self> {
        if x.len() != spec.n {
            return Err(Error::DimensionMismatch {
                expected: spec.n,
                found: x.len(),
            });
        }
        let w = hamming_weights(spec)?;
        Ok(PerturbationSampler::Distance {
            center: x.clone(),
            distance: WeightedIndex::new(w).map_err(|e| Error::invalid(e.to_string()))?,
        })
    }

    pub fn sample(&self, rng: &mut Rng) -> BitString {
        match self {
            PerturbationSampler::Distance { center, distance } => {
                let d = distance.sample(rng);
                let positions = rand::seq::index::sample(rng, center.len(), d).into_vec();
                center.flipped(&positions)
            }
            PerturbationSampler::Mixture { center, stay } => {
                if rng.gen::<f64>() < *stay {
                    center.clone()
                } else {
                    BitString::new((0..center.len()).map(|_| rng.gen()).collect())
                }
            }
            PerturbationSampler::Table { n, index } => BitString::from_index(index.sample(rng), *n),
        }
    }
}

/// One draw from the exact k-Hamming law around `x`.
pub fn sample_perturbation(spec: &HammingNoiseSpec, x: &BitString, seed: u64) -> Result<BitString> {
    let sampler = PerturbationSampler::hamming(spec, x)?;
    Ok(sampler.sample(&mut rng_from_seed(seed)))
}
