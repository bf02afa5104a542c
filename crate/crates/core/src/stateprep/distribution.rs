use std::io::{Read, Write};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Largest bit length for which full probability tables are built.
pub const ENUMERATION_LIMIT: usize = 20;

pub(crate) fn check_enumerable(n: usize) -> Result<()> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationLimit {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// A probability for each of the `2^n` bitstrings, indexed big-endian.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteDistribution {
    n: usize,
    probs: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(n: usize, probs: Vec<f64>) -> Result<Self> {
        check_enumerable(n)?;
        if probs.len() != 1 << n {
            return Err(Error::invalid(format!(
                "expected {} probabilities, got {}",
                1usize << n,
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return Err(Error::invalid(format!("invalid probability {p}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::invalid(format!("probabilities sum to {total}")));
        }
        Ok(DiscreteDistribution { n, probs })
    }

    pub fn point_mass(x: &BitString) -> Result<Self> {
        check_enumerable(x.len())?;
        let mut probs = vec![0.0; 1 << x.len()];
        probs[x.to_index()] = 1.0;
        Ok(DiscreteDistribution { n: x.len(), probs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, x: &BitString) -> f64 {
        self.probs[x.to_index()]
    }

    pub fn total_variation(&self, other: &DiscreteDistribution) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(0.5
            * self
                .probs
                .iter()
                .zip(&other.probs)
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>())
    }

    /// `E[f(X)]` under this law.
    pub fn expectation(&self, mut f: impl FnMut(&BitString) -> f64) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > 0.0)
            .map(|(i, p)| p * f(&BitString::from_index(i, self.n)))
            .sum()
    }

    /// `bitstring,probability` rows for every nonzero entry, sorted by bitstring.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["bitstring", "probability"])?;
        for (i, p) in self.probs.iter().enumerate() {
            if *p > 0.0 {
                w.write_record([BitString::from_index(i, self.n).to_string(), p.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let mut n = None;
        let mut entries = Vec::new();
        for (row, rec) in r.records().enumerate() {
            let line = row + 2;
            let rec = rec?;
            if rec.len() != 2 {
                return Err(Error::parse(line, "expected 2 columns"));
            }
            let bits: BitString = rec[0]
                .parse()
                .map_err(|e: Error| Error::parse(line, e.to_string()))?;
            if bits.is_empty() {
                return Err(Error::parse(line, "empty bitstring"));
            }
            if *n.get_or_insert(bits.len()) != bits.len() {
                return Err(Error::parse(
                    line,
                    "bitstring length differs from first row",
                ));
            }
            if bits.len() > ENUMERATION_LIMIT {
                return Err(Error::parse(line, "bitstring too long"));
            }
            let p: f64 = rec[1]
                .trim()
                .parse()
                .map_err(|_| Error::parse(line, format!("bad probability '{}'", &rec[1])))?;
            entries.push((line, bits, p));
        }
        let n = n.ok_or_else(|| Error::parse(1, "no rows"))?;
        let mut probs = vec![0.0; 1 << n];
        for (line, bits, p) in entries {
            let slot = &mut probs[bits.to_index()];
            if *slot != 0.0 {
                return Err(Error::parse(line, format!("duplicate bitstring {bits}")));
            }
            *slot = p;
        }
        DiscreteDistribution::new(n, probs)
    }
}
