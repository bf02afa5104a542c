use rand::seq::SliceRandom;

use super::{adjoint_gradient, ClassifierParams, LabeledDataset};
use crate::error::{Error, Result};
use crate::seed::{derive_seed, rng_from_seed};

#[derive(Clone, Debug, PartialEq)]
pub struct TrainConfig {
    pub layers: usize,
    pub output_qubit: usize,
    pub entangling_range: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    /// `None` trains on the full set each step.
    pub batch_size: Option<usize>,
    /// Initial angles are uniform on `(-init_spread, init_spread)`.
    pub init_spread: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            layers: 2,
            output_qubit: 0,
            entangling_range: 1,
            learning_rate: 0.1,
            epochs: 200,
            batch_size: None,
            init_spread: 0.1,
            seed: 0,
        }
    }
}

/// Mean loss seen during each epoch, measured before that epoch's updates.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrainLog {
    pub losses: Vec<f64>,
}

/// Gradient descent on the squared error of the soft output.
pub fn train(
    config: &TrainConfig,
    dataset: &LabeledDataset,
) -> Result<(ClassifierParams, TrainLog)> {
    if dataset.is_empty() {
        return Err(Error::invalid("empty dataset"));
    }
    if !(config.learning_rate > 0.0) || !config.learning_rate.is_finite() {
        return Err(Error::invalid("learning rate must be positive"));
    }
    if config.batch_size == Some(0) {
        return Err(Error::invalid("batch size must be positive"));
    }
    let mut params = ClassifierParams::random(
        dataset.width(),
        config.layers,
        config.output_qubit,
        config.entangling_range,
        config.init_spread,
        derive_seed(config.seed, 0),
    )?;
    let mut shuffle_rng = rng_from_seed(derive_seed(config.seed, 1));
    let mut order: Vec<usize> = (0..dataset.len()).collect();
    let batch = config
        .batch_size
        .unwrap_or(dataset.len())
        .min(dataset.len());
    let mut log = TrainLog::default();
    for epoch in 0..config.epochs {
        if batch < dataset.len() {
            order.shuffle(&mut shuffle_rng);
        }
        let mut epoch_loss = 0.0;
        for chunk in order.chunks(batch) {
            let (l, grad) = if batch == dataset.len() {
                adjoint_gradient(&params, dataset)?
            } else {
                adjoint_gradient(&params, &dataset.subset(chunk))?
            };
            if !l.is_finite() || grad.iter().any(|g| !g.is_finite()) {
                return Err(Error::Divergence { epoch });
            }
            epoch_loss += l * chunk.len() as f64;
            for (a, g) in params.angles_mut().iter_mut().zip(&grad) {
                *a -= config.learning_rate * g;
            }
        }
        log.losses.push(epoch_loss / dataset.len() as f64);
    }
    Ok((params, log))
}
