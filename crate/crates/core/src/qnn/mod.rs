//! Layered variational classifier over basis-embedded bitstrings.
//!
//! Each layer applies a general rotation to every qubit and then a ring of
//! CNOTs. The soft output is the probability of reading `1` on the output
//! qubit.

mod gradient;
mod io;
mod train;

pub use gradient::{adjoint_gradient, loss, parameter_shift_gradient};
pub use train::{train, TrainConfig, TrainLog};

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::seed::rng_from_seed;
use crate::simulator::{Circuit, Gate, StateVector};
use crate::BitString;

/// Angles are stored layer-major: `[layer][qubit][axis]`, axis 0..3 being
/// the three rotation angles in application order.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifierParams {
    num_qubits: usize,
    num_layers: usize,
    output_qubit: usize,
    entangling_range: usize,
    angles: Vec<f64>,
}

impl ClassifierParams {
    pub fn zeros(
        num_qubits: usize,
        num_layers: usize,
        output_qubit: usize,
        entangling_range: usize,
    ) -> Result<Self> {
        Self::from_angles(
            num_qubits,
            num_layers,
            output_qubit,
            entangling_range,
            vec![0.0; num_layers * num_qubits * 3],
        )
    }

    pub fn from_angles(
        num_qubits: usize,
        num_layers: usize,
        output_qubit: usize,
        entangling_range: usize,
        angles: Vec<f64>,
    ) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::invalid("classifier needs at least one qubit"));
        }
        if output_qubit >= num_qubits {
            return Err(Error::QubitOutOfRange {
                index: output_qubit,
                num_qubits,
            });
        }
        if entangling_range == 0 || (num_qubits > 1 && entangling_range % num_qubits == 0) {
            return Err(Error::invalid(format!(
                "entangling range {entangling_range} maps qubits onto themselves"
            )));
        }
        if angles.len() != num_layers * num_qubits * 3 {
            return Err(Error::invalid(format!(
                "expected {} angles, got {}",
                num_layers * num_qubits * 3,
                angles.len()
            )));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::invalid("non-finite angle"));
        }
        Ok(ClassifierParams {
            num_qubits,
            num_layers,
            output_qubit,
            entangling_range,
            angles,
        })
    }

    /// Angles drawn uniformly from `(-spread, spread)`.
    pub fn random(
        num_qubits: usize,
        num_layers: usize,
        output_qubit: usize,
        entangling_range: usize,
        spread: f64,
        seed: u64,
    ) -> Result<Self> {
        let mut rng = rng_from_seed(seed);
        let angles = (0..num_layers * num_qubits * 3)
            .map(|_| rng.gen_range(-spread..spread))
            .collect();
        Self::from_angles(
            num_qubits,
            num_layers,
            output_qubit,
            entangling_range,
            angles,
        )
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_layers(&self) -> usize {
        self.num_layers
    }

    pub fn output_qubit(&self) -> usize {
        self.output_qubit
    }

    pub fn entangling_range(&self) -> usize {
        self.entangling_range
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn index(&self, layer: usize, qubit: usize, axis: usize) -> usize {
        (layer * self.num_qubits + qubit) * 3 + axis
    }

    pub fn angle(&self, layer: usize, qubit: usize, axis: usize) -> f64 {
        self.angles[self.index(layer, qubit, axis)]
    }

    pub fn set_angle(&mut self, layer: usize, qubit: usize, axis: usize, value: f64) {
        let i = self.index(layer, qubit, axis);
        self.angles[i] = value;
    }

    pub(crate) fn angles_mut(&mut self) -> &mut [f64] {
        &mut self.angles
    }

    fn ring(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.num_qubits;
        (0..if n > 1 { n } else { 0 }).map(move |q| (q, (q + self.entangling_range) % n))
    }
}

/// The classifier body, without the input embedding.
pub fn classifier_circuit(params: &ClassifierParams) -> Circuit {
    let n = params.num_qubits;
    let mut gates = Vec::with_capacity(params.num_layers * n * 2);
    for layer in 0..params.num_layers {
        for q in 0..n {
            gates.push(Gate::rot(
                q,
                params.angle(layer, q, 0),
                params.angle(layer, q, 1),
                params.angle(layer, q, 2),
            ));
        }
        gates.extend(params.ring().map(|(c, t)| Gate::cnot(c, t)));
    }
    Circuit::from_gates(n, gates).expect("ring and rotations are in range by construction")
}

/// A classifier with its circuit built once, for repeated evaluation.
#[derive(Clone, Debug)]
pub struct Classifier {
    params: ClassifierParams,
    circuit: Circuit,
}

impl Classifier {
    pub fn new(params: ClassifierParams) -> Self {
        let circuit = classifier_circuit(&params);
        Classifier { params, circuit }
    }

    pub fn params(&self) -> &ClassifierParams {
        &self.params
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn soft(&self, x: &BitString) -> Result<f64> {
        if x.len() != self.params.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.params.num_qubits,
                found: x.len(),
            });
        }
        let mut state = StateVector::from_bits(x);
        state.run(&self.circuit)?;
        let z = state.expectation_z(self.params.output_qubit)?;
        Ok(((1.0 - z) / 2.0).clamp(0.0, 1.0))
    }

    pub fn predict(&self, x: &BitString) -> Result<u8> {
        Ok(u8::from(self.soft(x)? > 0.5))
    }
}

pub fn predict_soft(params: &ClassifierParams, x: &BitString) -> Result<f64> {
    Classifier::new(params.clone()).soft(x)
}

/// Bitstring inputs of a common length with binary labels.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledDataset {
    inputs: Vec<BitString>,
    labels: Vec<u8>,
}

impl LabeledDataset {
    pub fn new(inputs: Vec<BitString>, labels: Vec<u8>) -> Result<Self> {
        if inputs.len() != labels.len() {
            return Err(Error::invalid(format!(
                "{} inputs but {} labels",
                inputs.len(),
                labels.len()
            )));
        }
        if let Some(l) = labels.iter().find(|l| **l > 1) {
            return Err(Error::invalid(format!("label {l} is not binary")));
        }
        if let Some(first) = inputs.first() {
            if let Some(bad) = inputs.iter().find(|x| x.len() != first.len()) {
                return Err(Error::DimensionMismatch {
                    expected: first.len(),
                    found: bad.len(),
                });
            }
        }
        Ok(LabeledDataset { inputs, labels })
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    /// Bit length of the inputs; 0 for an empty set.
    pub fn width(&self) -> usize {
        self.inputs.first().map_or(0, BitString::len)
    }

    pub fn inputs(&self) -> &[BitString] {
        &self.inputs
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitString, u8)> {
        self.inputs.iter().zip(self.labels.iter().copied())
    }

    pub fn with_flipped_labels(&self) -> Self {
        LabeledDataset {
            inputs: self.inputs.clone(),
            labels: self.labels.iter().map(|l| 1 - l).collect(),
        }
    }

    pub fn subset(&self, indices: &[usize]) -> Self {
        LabeledDataset {
            inputs: indices.iter().map(|&i| self.inputs[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }
}

/// Fraction of samples whose hard prediction equals the label.
pub fn evaluate_accuracy(params: &ClassifierParams, dataset: &LabeledDataset) -> Result<f64> {
    if dataset.is_empty() {
        return Err(Error::invalid("empty dataset"));
    }
    let clf = Classifier::new(params.clone());
    let mut correct = 0usize;
    for (x, label) in dataset.iter() {
        if clf.predict(x)? == label {
            correct += 1;
        }
    }
    Ok(correct as f64 / dataset.len() as f64)
}
