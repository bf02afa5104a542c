use std::path::Path;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::qnn::LabeledDataset;
use crate::seed::rng_from_seed;
use crate::BitString;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Species {
    Setosa,
    Versicolor,
    Virginica,
}

impl Species {
    fn parse(name: &str) -> Option<Self> {
        let lower = name.trim().to_ascii_lowercase();
        match lower.strip_prefix("iris-").unwrap_or(&lower) {
            "setosa" => Some(Species::Setosa),
            "versicolor" => Some(Species::Versicolor),
            "virginica" => Some(Species::Virginica),
            _ => None,
        }
    }
}

/// Sepal length, sepal width, petal length, petal width and species.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IrisRow {
    pub features: [f64; 4],
    pub species: Species,
}

/// Parses the 5-column Iris CSV. A header row is recognised by a
/// non-numeric first field and skipped.
pub fn parse_iris(text: &str) -> Result<Vec<IrisRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let line = i + 1;
        let rec = rec?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if i == 0 && rec.get(0).is_some_and(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        if rec.len() != 5 {
            return Err(Error::parse(
                line,
                format!("expected 5 columns, found {}", rec.len()),
            ));
        }
        let mut features = [0.0; 4];
        for (j, f) in features.iter_mut().enumerate() {
            *f = rec[j]
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| Error::parse(line, format!("bad feature '{}'", &rec[j])))?;
        }
        let species = Species::parse(&rec[4])
            .ok_or_else(|| Error::parse(line, format!("unknown species '{}'", &rec[4])))?;
        rows.push(IrisRow { features, species });
    }
    if rows.is_empty() {
        return Err(Error::parse(1, "no rows"));
    }
    Ok(rows)
}

pub fn load_iris(path: impl AsRef<Path>) -> Result<Vec<IrisRow>> {
    parse_iris(&std::fs::read_to_string(path)?)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Two-class, three-bit Iris: versicolor dropped, virginica labelled 0 and
/// setosa 1, petal width dropped, rows scaled to unit norm, then a seeded
/// stratified 60/40 split. Each feature is thresholded at its training
/// median (bit set iff strictly above).
pub fn iris_binarize(rows: &[IrisRow], seed: u64) -> Result<(LabeledDataset, LabeledDataset)> {
    let mut kept = Vec::new();
    for row in rows {
        let label = match row.species {
            Species::Versicolor => continue,
            Species::Virginica => 0u8,
            Species::Setosa => 1u8,
        };
        let v = [row.features[0], row.features[1], row.features[2]];
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::invalid("all-zero Iris row cannot be normalized"));
        }
        kept.push((v.map(|x| x / norm), label));
    }
    let mut rng = rng_from_seed(seed);
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for class in [0u8, 1] {
        let mut idx: Vec<usize> = (0..kept.len()).filter(|&i| kept[i].1 == class).collect();
        if idx.len() < 2 {
            return Err(Error::invalid(format!(
                "class {class} has fewer than two rows"
            )));
        }
        idx.shuffle(&mut rng);
        let cut = (idx.len() * 3 + 2) / 5;
        train_idx.extend_from_slice(&idx[..cut]);
        test_idx.extend_from_slice(&idx[cut..]);
    }
    train_idx.sort_unstable();
    test_idx.sort_unstable();
    let thresholds: Vec<f64> = (0..3)
        .map(|f| median(train_idx.iter().map(|&i| kept[i].0[f]).collect()))
        .collect();
    let encode = |idx: &[usize]| -> Result<LabeledDataset> {
        let inputs = idx
            .iter()
            .map(|&i| BitString::new((0..3).map(|f| kept[i].0[f] > thresholds[f]).collect()))
            .collect();
        LabeledDataset::new(inputs, idx.iter().map(|&i| kept[i].1).collect())
    };
    Ok((encode(&train_idx)?, encode(&test_idx)?))
}
