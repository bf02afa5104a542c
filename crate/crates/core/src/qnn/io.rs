use std::io::{Read, Write};

use super::{ClassifierParams, LabeledDataset};
use crate::error::{Error, Result};
use crate::BitString;

impl ClassifierParams {
    /// `layer,qubit,axis,angle` rows in storage order.
    pub fn write_angles_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["layer", "qubit", "axis", "angle"])?;
        for layer in 0..self.num_layers {
            for q in 0..self.num_qubits {
                for axis in 0..3 {
                    w.write_record([
                        layer.to_string(),
                        q.to_string(),
                        axis.to_string(),
                        self.angle(layer, q, axis).to_string(),
                    ])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    /// One `qubits,layers,output_qubit,range` row.
    pub fn write_header_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["qubits", "layers", "output_qubit", "range"])?;
        w.write_record([
            self.num_qubits.to_string(),
            self.num_layers.to_string(),
            self.output_qubit.to_string(),
            self.entangling_range.to_string(),
        ])?;
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<H: Read, A: Read>(header: H, angles: A) -> Result<Self> {
        let mut h = csv::Reader::from_reader(header);
        let row = h
            .records()
            .next()
            .ok_or_else(|| Error::parse(2, "missing header row"))??;
        if row.len() != 4 {
            return Err(Error::parse(2, "expected 4 header columns"));
        }
        let field = |i: usize| -> Result<usize> {
            row[i]
                .trim()
                .parse()
                .map_err(|_| Error::parse(2, format!("bad integer '{}'", &row[i])))
        };
        let (qubits, layers, output, range) = (field(0)?, field(1)?, field(2)?, field(3)?);
        let expected = layers
            .checked_mul(qubits)
            .and_then(|v| v.checked_mul(3))
            .filter(|v| *v <= 1 << 24)
            .ok_or_else(|| Error::parse(2, "parameter count too large"))?;
        let mut values = vec![None; expected];
        let mut a = csv::Reader::from_reader(angles);
        for (i, rec) in a.records().enumerate() {
            let line = i + 2;
            let rec = rec?;
            if rec.len() != 4 {
                return Err(Error::parse(line, "expected 4 columns"));
            }
            let int = |j: usize| -> Result<usize> {
                rec[j]
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad integer '{}'", &rec[j])))
            };
            let (l, q, axis) = (int(0)?, int(1)?, int(2)?);
            if l >= layers || q >= qubits || axis >= 3 {
                return Err(Error::parse(line, "index out of range"));
            }
            let angle: f64 = rec[3]
                .trim()
                .parse()
                .map_err(|_| Error::parse(line, format!("bad angle '{}'", &rec[3])))?;
            if !angle.is_finite() {
                return Err(Error::parse(line, "non-finite angle"));
            }
            let slot = &mut values[(l * qubits + q) * 3 + axis];
            if slot.replace(angle).is_some() {
                return Err(Error::parse(line, "duplicate entry"));
            }
        }
        let angles = values
            .into_iter()
            .collect::<Option<Vec<f64>>>()
            .ok_or_else(|| Error::parse(1, "missing angle entries"))?;
        ClassifierParams::from_angles(qubits, layers, output, range, angles)
            .map_err(|e| Error::parse(2, e.to_string()))
    }
}

impl LabeledDataset {
    /// `bits,label` rows.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["bits", "label"])?;
        for (x, l) in self.iter() {
            w.write_record([x.to_string(), l.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let mut inputs = Vec::new();
        let mut labels = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let line = i + 2;
            let rec = rec?;
            if rec.len() != 2 {
                return Err(Error::parse(line, "expected 2 columns"));
            }
            let x: BitString = rec[0]
                .parse()
                .map_err(|e: Error| Error::parse(line, e.to_string()))?;
            if x.is_empty() || x.len() > 64 {
                return Err(Error::parse(line, "bitstring length must be 1..=64"));
            }
            if inputs
                .first()
                .is_some_and(|f: &BitString| f.len() != x.len())
            {
                return Err(Error::parse(
                    line,
                    "bitstring length differs from first row",
                ));
            }
            let label = match rec[1].trim() {
                "0" => 0,
                "1" => 1,
                other => return Err(Error::parse(line, format!("label '{other}' is not 0 or 1"))),
            };
            inputs.push(x);
            labels.push(label);
        }
        LabeledDataset::new(inputs, labels)
    }
}
