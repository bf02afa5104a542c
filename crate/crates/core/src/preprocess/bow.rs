use super::RawSeries;
use crate::error::{Error, Result};
use crate::BitString;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BowConfig {
    pub window_size: usize,
    /// Symbols per window.
    pub word_size: usize,
    /// Alphabet size; only 2 is supported.
    pub n_bins: usize,
    pub truncate_to_first_half: bool,
}

impl Default for BowConfig {
    fn default() -> Self {
        BowConfig {
            window_size: 15,
            word_size: 2,
            n_bins: 2,
            truncate_to_first_half: true,
        }
    }
}

impl BowConfig {
    pub fn validate(&self) -> Result<()> {
        if self.word_size == 0 || self.window_size == 0 {
            return Err(Error::invalid("window and word sizes must be positive"));
        }
        if self.word_size > self.window_size {
            return Err(Error::invalid(format!(
                "word size {} exceeds window size {}",
                self.word_size, self.window_size
            )));
        }
        if self.n_bins != 2 {
            return Err(Error::invalid(format!(
                "{} bins requested; only 2 are supported",
                self.n_bins
            )));
        }
        Ok(())
    }

    /// Output bit length for a raw series of `len` values.
    pub fn output_len(&self, len: usize) -> usize {
        let effective = if self.truncate_to_first_half {
            len / 2
        } else {
            len
        };
        self.word_size * (effective / self.window_size)
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Encodes one window: z-normalize, average `word` contiguous segments
/// (longer ones first), emit `mean > 0`.
fn encode_window(window: &[f64], word: usize, out: &mut Vec<bool>) {
    let mu = mean(window);
    let sd = (window.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / window.len() as f64).sqrt();
    // Constant windows, up to rounding in the mean, encode as zeros.
    if sd <= 1e-12 * mu.abs().max(1.0) {
        out.extend(std::iter::repeat(false).take(word));
        return;
    }
    let z: Vec<f64> = window.iter().map(|v| (v - mu) / sd).collect();
    let (base, extra) = (z.len() / word, z.len() % word);
    let mut start = 0;
    for s in 0..word {
        let len = base + usize::from(s < extra);
        out.push(mean(&z[start..start + len]) > 0.0);
        start += len;
    }
}

/// Binary Bag-of-Words word sequence of a series; trailing partial windows
/// are dropped.
pub fn bow_transform(series: &RawSeries, config: &BowConfig) -> Result<BitString> {
    config.validate()?;
    let values = if config.truncate_to_first_half {
        &series.values[..series.values.len() / 2]
    } else {
        &series.values[..]
    };
    if values.len() < config.window_size {
        return Err(Error::invalid(format!(
            "series of effective length {} is shorter than one window of {}",
            values.len(),
            config.window_size
        )));
    }
    let mut bits = Vec::with_capacity(config.output_len(series.values.len()));
    for window in values.chunks_exact(config.window_size) {
        encode_window(window, config.word_size, &mut bits);
    }
    Ok(BitString::new(bits))
}
