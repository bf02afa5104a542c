//! Per-sample certification along the sampling and amplitude-estimation
//! paths, and certified-accuracy curves.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;

use rand::Rng as _;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qnn::{Classifier, LabeledDataset};
use crate::quadro::{quadro_run, QaeConfig};
use crate::seed::{derive_seed, rng_from_seed};
use crate::smoothing::{
    certified_radius_from_profile, clopper_pearson_lower, delta_profile, SmoothingKernel,
};
use crate::BitString;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertPath {
    Rs,
    Quadro,
}

impl fmt::Display for CertPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertPath::Rs => "rs",
            CertPath::Quadro => "quadro",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificationRecord {
    pub index: usize,
    pub label: u8,
    pub predicted: u8,
    /// Estimated probability of the predicted class.
    pub p_hat: f64,
    pub p_lower: f64,
    /// `-1` means abstain.
    pub radius: i64,
    pub oracle_calls: u64,
    pub path: CertPath,
    pub distribution: &'static str,
    pub sigma: f64,
    pub seed: u64,
}

impl CertificationRecord {
    pub fn certified_correct_at(&self, r: i64) -> bool {
        self.predicted == self.label && self.radius >= r
    }
}

fn kernel_name(kernel: &SmoothingKernel) -> &'static str {
    match kernel {
        SmoothingKernel::Hamming(_) => "hamming",
        SmoothingKernel::ShallowCircuit { .. } => "hamming-circuit",
        SmoothingKernel::Uniform { .. } => "uniform",
    }
}

fn kernel_sigma(kernel: &SmoothingKernel) -> f64 {
    match *kernel {
        SmoothingKernel::Hamming(spec) => spec.sigma,
        SmoothingKernel::ShallowCircuit { sigma, .. } | SmoothingKernel::Uniform { sigma, .. } => {
            sigma
        }
    }
}

/// A trained classifier paired with a smoothing law. The law's radius
/// profile is computed once.
#[derive(Clone, Debug)]
pub struct Certifier {
    classifier: Classifier,
    kernel: SmoothingKernel,
    profile: Vec<f64>,
    alpha: f64,
}

impl Certifier {
    pub fn new(classifier: Classifier, kernel: SmoothingKernel, alpha: f64) -> Result<Self> {
        if classifier.params().num_qubits() != kernel.n() {
            return Err(Error::DimensionMismatch {
                expected: kernel.n(),
                found: classifier.params().num_qubits(),
            });
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::invalid("alpha must lie in (0, 1)"));
        }
        let profile = delta_profile(&kernel)?;
        Ok(Certifier {
            classifier,
            kernel,
            profile,
            alpha,
        })
    }

    pub fn kernel(&self) -> &SmoothingKernel {
        &self.kernel
    }

    /// `[Δ(1), ..., Δ(n)]`.
    pub fn profile(&self) -> &[f64] {
        &self.profile
    }

    fn record(&self, index: usize, label: u8, path: CertPath, seed: u64) -> CertificationRecord {
        CertificationRecord {
            index,
            label,
            predicted: 0,
            p_hat: 0.0,
            p_lower: 0.0,
            radius: -1,
            oracle_calls: 0,
            path,
            distribution: kernel_name(&self.kernel),
            sigma: kernel_sigma(&self.kernel),
            seed,
        }
    }

    /// Sampling path: `shots` perturbations, one measurement of the
    /// classifier output each.
    pub fn rs(
        &self,
        index: usize,
        x: &BitString,
        label: u8,
        shots: u64,
        seed: u64,
    ) -> Result<CertificationRecord> {
        if shots == 0 {
            return Err(Error::invalid("shots must be positive"));
        }
        let sampler = self.kernel.sampler(x)?;
        let mut rng = rng_from_seed(seed);
        let mut memo: HashMap<BitString, f64> = HashMap::new();
        let mut ones = 0u64;
        for _ in 0..shots {
            let noisy = sampler.sample(&mut rng);
            let y = match memo.get(&noisy) {
                Some(y) => *y,
                None => {
                    let y = self.classifier.soft(&noisy)?;
                    memo.insert(noisy, y);
                    y
                }
            };
            if rng.gen::<f64>() < y {
                ones += 1;
            }
        }
        let predicted = u8::from(2 * ones > shots);
        let successes = if predicted == 1 { ones } else { shots - ones };
        let p_lower = clopper_pearson_lower(successes, shots, self.alpha)?;
        Ok(CertificationRecord {
            predicted,
            p_hat: successes as f64 / shots as f64,
            p_lower,
            radius: certified_radius_from_profile(p_lower, &self.profile),
            oracle_calls: shots,
            ..self.record(index, label, CertPath::Rs, seed)
        })
    }

    /// Amplitude-estimation path on the prepared superposition of `x`.
    pub fn quadro(
        &self,
        index: usize,
        x: &BitString,
        label: u8,
        config: &QaeConfig,
    ) -> Result<CertificationRecord> {
        let prep = self.kernel.mixture_prep_circuit(x)?;
        let out = quadro_run(
            &prep,
            self.classifier.circuit(),
            self.classifier.params().output_qubit(),
            config,
        )?;
        let est = out.estimate;
        let (predicted, p_hat, p_lower) = if est.p_hat > 0.5 {
            (1, est.p_hat, est.p_lower)
        } else {
            (0, 1.0 - est.p_hat, 1.0 - out.p_upper)
        };
        Ok(CertificationRecord {
            predicted,
            p_hat,
            p_lower,
            radius: certified_radius_from_profile(p_lower, &self.profile),
            oracle_calls: est.oracle_calls,
            ..self.record(index, label, CertPath::Quadro, config.seed)
        })
    }

    /// Total qubits used by the amplitude-estimation path: data, one copy
    /// ancilla per data bit, output flag and phase ancilla.
    pub fn quadro_register_size(&self) -> usize {
        2 * self.kernel.n() + 2
    }

    /// Certifies every sample with seeds `derive_seed(seed, index)`; records
    /// come back in dataset order.
    pub fn rs_all(
        &self,
        data: &LabeledDataset,
        shots: u64,
        seed: u64,
    ) -> Result<Vec<CertificationRecord>> {
        (0..data.len())
            .into_par_iter()
            .map(|i| {
                self.rs(
                    i,
                    &data.inputs()[i],
                    data.labels()[i],
                    shots,
                    derive_seed(seed, i as u64),
                )
            })
            .collect()
    }

    pub fn quadro_all(
        &self,
        data: &LabeledDataset,
        config: &QaeConfig,
    ) -> Result<Vec<CertificationRecord>> {
        (0..data.len())
            .into_par_iter()
            .map(|i| {
                let cfg = QaeConfig {
                    seed: derive_seed(config.seed, i as u64),
                    ..*config
                };
                self.quadro(i, &data.inputs()[i], data.labels()[i], &cfg)
            })
            .collect()
    }
}

pub fn rs_certify_sample(
    classifier: &Classifier,
    kernel: &SmoothingKernel,
    x: &BitString,
    label: u8,
    shots: u64,
    alpha: f64,
    seed: u64,
) -> Result<CertificationRecord> {
    Certifier::new(classifier.clone(), *kernel, alpha)?.rs(0, x, label, shots, seed)
}

pub fn quadro_certify_sample(
    classifier: &Classifier,
    kernel: &SmoothingKernel,
    x: &BitString,
    label: u8,
    config: &QaeConfig,
) -> Result<CertificationRecord> {
    config.validate()?;
    Certifier::new(classifier.clone(), *kernel, config.alpha)?.quadro(0, x, label, config)
}

/// Fraction of records both correct and certified at each radius.
pub fn certified_accuracy_curve(
    records: &[CertificationRecord],
    radii: &[i64],
) -> Result<Vec<(i64, f64)>> {
    if records.is_empty() {
        return Err(Error::invalid("no records"));
    }
    Ok(radii
        .iter()
        .map(|&r| {
            let hits = records
                .iter()
                .filter(|rec| rec.certified_correct_at(r))
                .count();
            (r, hits as f64 / records.len() as f64)
        })
        .collect())
}

pub fn write_records_csv<W: Write>(records: &[CertificationRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "index",
        "label",
        "predicted",
        "p_hat",
        "p_lower",
        "radius",
        "oracle_calls",
        "path",
        "distribution",
        "sigma",
        "seed",
    ])?;
    for r in records {
        w.write_record([
            r.index.to_string(),
            r.label.to_string(),
            r.predicted.to_string(),
            r.p_hat.to_string(),
            r.p_lower.to_string(),
            r.radius.to_string(),
            r.oracle_calls.to_string(),
            r.path.to_string(),
            r.distribution.to_string(),
            r.sigma.to_string(),
            r.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `radius,certified_accuracy,path,shots` rows.
pub fn write_curve_csv<W: Write>(
    curve: &[(i64, f64)],
    path: CertPath,
    shots: u64,
    writer: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["radius", "certified_accuracy", "path", "shots"])?;
    for (r, acc) in curve {
        w.write_record([
            r.to_string(),
            acc.to_string(),
            path.to_string(),
            shots.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
