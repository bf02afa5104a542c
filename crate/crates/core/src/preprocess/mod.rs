//! Turning raw data into labelled bitstrings: UCR time series through a
//! binary Bag-of-Words encoding, and the two-class Iris reduction.

mod bow;
mod iris;
mod ucr;

pub use bow::{bow_transform, BowConfig};
pub use iris::{iris_binarize, load_iris, parse_iris, IrisRow, Species};
pub use ucr::{load_ucr, parse_ucr, RawSeries};

use crate::error::Result;
use crate::qnn::LabeledDataset;

/// Encodes every series and keeps its label.
pub fn bow_dataset(series: &[RawSeries], config: &BowConfig) -> Result<LabeledDataset> {
    let inputs = series
        .iter()
        .map(|s| bow_transform(s, config))
        .collect::<Result<Vec<_>>>()?;
    LabeledDataset::new(inputs, series.iter().map(|s| s.label).collect())
}
