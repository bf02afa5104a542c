use std::path::Path;

use crate::error::{Error, Result};

/// One labelled time series; `label` is already mapped to `{0, 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RawSeries {
    pub label: u8,
    pub values: Vec<f64>,
}

fn split_fields(line: &str) -> Vec<&str> {
    if line.contains('\t') {
        line.split('\t').map(str::trim).collect()
    } else if line.contains(',') {
        line.split(',').map(str::trim).collect()
    } else {
        line.split_whitespace().collect()
    }
}

fn number(field: &str, line: usize) -> Result<f64> {
    let v: f64 = field
        .parse()
        .map_err(|_| Error::parse(line, format!("'{field}' is not a number")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("non-finite value '{field}'")));
    }
    Ok(v)
}

/// Parses UCR text: one series per line, label first, then the values,
/// separated by tabs, commas or whitespace. Raw labels are mapped to
/// `0, 1` in increasing numeric order; blank lines are skipped.
pub fn parse_ucr(text: &str) -> Result<Vec<RawSeries>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields = split_fields(line.trim());
        if fields.len() < 2 {
            return Err(Error::parse(
                line_no,
                "expected a label and at least one value",
            ));
        }
        let label = number(fields[0], line_no)?;
        let values = fields[1..]
            .iter()
            .map(|f| number(f, line_no))
            .collect::<Result<Vec<_>>>()?;
        rows.push((line_no, label, values));
    }
    if rows.is_empty() {
        return Err(Error::parse(1, "no series found"));
    }
    let mut classes: Vec<f64> = rows.iter().map(|r| r.1).collect();
    classes.sort_by(f64::total_cmp);
    classes.dedup();
    if classes.len() > 2 {
        let line = rows.iter().find(|r| r.1 == classes[2]).map_or(1, |r| r.0);
        return Err(Error::parse(
            line,
            format!(
                "found {} classes; only binary problems are supported",
                classes.len()
            ),
        ));
    }
    Ok(rows
        .into_iter()
        .map(|(_, label, values)| RawSeries {
            label: u8::from(label != classes[0]),
            values,
        })
        .collect())
}

pub fn load_ucr(path: impl AsRef<Path>) -> Result<Vec<RawSeries>> {
    parse_ucr(&std::fs::read_to_string(path)?)
}
