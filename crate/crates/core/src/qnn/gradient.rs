use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::{Classifier, ClassifierParams, LabeledDataset};
use crate::error::{Error, Result};
use crate::simulator::{ry_matrix, rz_matrix, Gate, Mat2, StateVector};
use crate::BitString;

fn check(params: &ClassifierParams, dataset: &LabeledDataset) -> Result<()> {
    if dataset.is_empty() {
        return Err(Error::invalid("empty dataset"));
    }
    if dataset.width() != params.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: params.num_qubits(),
            found: dataset.width(),
        });
    }
    Ok(())
}

/// Per-sample soft outputs, in dataset order.
fn soft_outputs(params: &ClassifierParams, dataset: &LabeledDataset) -> Result<Vec<f64>> {
    let clf = Classifier::new(params.clone());
    dataset.inputs().par_iter().map(|x| clf.soft(x)).collect()
}

/// Mean squared error of the soft output against the labels.
pub fn loss(params: &ClassifierParams, dataset: &LabeledDataset) -> Result<f64> {
    check(params, dataset)?;
    let ys = soft_outputs(params, dataset)?;
    Ok(ys
        .iter()
        .zip(dataset.labels())
        .map(|(y, t)| (y - f64::from(*t)).powi(2))
        .sum::<f64>()
        / dataset.len() as f64)
}

/// Loss gradient by the two-point shift rule, one pair of evaluations per angle.
pub fn parameter_shift_gradient(
    params: &ClassifierParams,
    dataset: &LabeledDataset,
) -> Result<Vec<f64>> {
    check(params, dataset)?;
    let ys = soft_outputs(params, dataset)?;
    let scale: Vec<f64> = ys
        .iter()
        .zip(dataset.labels())
        .map(|(y, t)| 2.0 * (y - f64::from(*t)) / dataset.len() as f64)
        .collect();
    (0..params.angles().len())
        .map(|j| {
            let mut plus = params.clone();
            plus.angles_mut()[j] += FRAC_PI_2;
            let mut minus = params.clone();
            minus.angles_mut()[j] -= FRAC_PI_2;
            let yp = soft_outputs(&plus, dataset)?;
            let ym = soft_outputs(&minus, dataset)?;
            Ok(scale
                .iter()
                .zip(yp.iter().zip(&ym))
                .map(|(s, (a, b))| s * (a - b) / 2.0)
                .sum())
        })
        .collect()
}

enum Step {
    Fixed(Gate),
    /// Single-axis rotation driven by angle `index`.
    Param {
        index: usize,
        gate: Gate,
        deriv: Mat2,
    },
}

/// The circuit with every general rotation split into its three axis
/// rotations, so each angle has its own gate.
fn unrolled(params: &ClassifierParams) -> Vec<Step> {
    let half = C64::new(0.0, -0.5);
    let scale = |m: Mat2, pauli: Mat2| -> Mat2 {
        let p = crate::simulator::matmul(&pauli, &m);
        [
            [p[0][0] * half, p[0][1] * half],
            [p[1][0] * half, p[1][1] * half],
        ]
    };
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let z: Mat2 = [[one, zero], [zero, -one]];
    let y: Mat2 = [[zero, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), zero]];

    let n = params.num_qubits();
    let mut steps = Vec::new();
    for layer in 0..params.num_layers() {
        for q in 0..n {
            for axis in 0..3 {
                let index = params.index(layer, q, axis);
                let t = params.angles()[index];
                let (gate, deriv) = if axis == 1 {
                    (Gate::ry(q, t), scale(ry_matrix(t), y))
                } else {
                    (Gate::rz(q, t), scale(rz_matrix(t), z))
                };
                steps.push(Step::Param { index, gate, deriv });
            }
        }
        steps.extend(params.ring().map(|(c, t)| Step::Fixed(Gate::cnot(c, t))));
    }
    steps
}

fn sample_gradient(
    steps: &[Step],
    output_qubit: usize,
    num_angles: usize,
    x: &BitString,
    label: u8,
) -> Result<(f64, Vec<f64>)> {
    let n = x.len();
    let mut phi = StateVector::from_bits(x);
    for step in steps {
        match step {
            Step::Fixed(g) | Step::Param { gate: g, .. } => phi.apply(g)?,
        }
    }
    let out_bit = 1usize << (n - 1 - output_qubit);
    let mut lambda = phi.clone();
    for (i, a) in lambda.amplitudes_mut().iter_mut().enumerate() {
        if i & out_bit == 0 {
            *a = C64::new(0.0, 0.0);
        }
    }
    let y = lambda.norm_sqr();
    let residual = y - f64::from(label);
    let mut grad = vec![0.0; num_angles];
    let mut mu = phi.clone();
    for step in steps.iter().rev() {
        match step {
            Step::Fixed(g) => {
                phi.apply(g)?;
                lambda.apply(g)?;
            }
            Step::Param { index, gate, deriv } => {
                let inv = gate.adjoint();
                phi.apply(&inv)?;
                mu.clone_from(&phi);
                mu.apply_with_matrix(gate, deriv)?;
                grad[*index] = 2.0 * residual * 2.0 * lambda.inner(&mu).re;
                lambda.apply(&inv)?;
            }
        }
    }
    Ok((residual * residual, grad))
}

/// Loss and its gradient by reverse-mode differentiation through the
/// statevector. Agrees with [`parameter_shift_gradient`] to rounding.
pub fn adjoint_gradient(
    params: &ClassifierParams,
    dataset: &LabeledDataset,
) -> Result<(f64, Vec<f64>)> {
    check(params, dataset)?;
    let steps = unrolled(params);
    let m = params.angles().len();
    let per_sample: Vec<(f64, Vec<f64>)> = dataset
        .inputs()
        .par_iter()
        .zip(dataset.labels().par_iter())
        .map(|(x, t)| sample_gradient(&steps, params.output_qubit(), m, x, *t))
        .collect::<Result<_>>()?;
    let count = dataset.len() as f64;
    let mut total = 0.0;
    let mut grad = vec![0.0; m];
    for (l, g) in &per_sample {
        total += l;
        for (acc, v) in grad.iter_mut().zip(g) {
            *acc += v;
        }
    }
    grad.iter_mut().for_each(|g| *g /= count);
    Ok((total / count, grad))
}
