use std::f64::consts::PI;

use super::DiscreteDistribution;
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::simulator::{Circuit, Control, Gate, StateVector};

fn check_sigma(sigma: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(Error::invalid(format!(
            "sigma must lie in [0, 1], got {sigma}"
        )));
    }
    Ok(())
}

/// Shallow smoothing circuit on `2n` qubits: data on `0..n`, one ancilla per
/// bit on `n..2n`.
///
/// Each data bit is flipped independently with probability
/// `sin^2(sigma * pi / 2) / 2`, so `sigma = 0` leaves `x` untouched and the
/// law is symmetric under permutations of the bits.
pub fn hamming_prep_circuit(x: &BitString, sigma: f64) -> Result<Circuit> {
    check_sigma(sigma)?;
    let n = x.len();
    if n == 0 {
        return Err(Error::invalid("empty input"));
    }
    let mut c = Circuit::new(2 * n);
    for (i, bit) in x.bits().iter().enumerate() {
        if *bit {
            c.push(Gate::x(i))?;
        }
    }
    for i in 0..n {
        c.push(Gate::h(n + i))?;
    }
    for i in 0..n {
        c.push(Gate::cry(n + i, i, sigma * PI))?;
    }
    for i in 0..n {
        c.push(Gate::x(n + i))?;
    }
    let controls = x
        .bits()
        .iter()
        .enumerate()
        .map(|(i, b)| Control {
            qubit: i,
            on_one: *b,
        })
        .collect();
    c.push(Gate::mcx(controls, (n..2 * n).collect()))?;
    Ok(c)
}

/// Mixture of the point mass at `x` and the uniform law on `n + 1` qubits:
/// data on `0..n`, mixing ancilla on `n`.
pub fn uniform_prep_circuit(x: &BitString, sigma: f64) -> Result<Circuit> {
    check_sigma(sigma)?;
    let n = x.len();
    if n == 0 {
        return Err(Error::invalid("empty input"));
    }
    let mut c = Circuit::new(n + 1);
    for (i, bit) in x.bits().iter().enumerate() {
        if *bit {
            c.push(Gate::x(i))?;
        }
    }
    c.push(Gate::ry(n, sigma * PI))?;
    for i in 0..n {
        c.push(Gate::h(i).with_controls([Control::one(n)]))?;
    }
    Ok(c)
}

/// Closed form of the uniform-mixture law: weight `cos^2(sigma * pi / 2)`
/// on `x`, the rest spread evenly over all `2^n` strings.
pub fn uniform_prep_law(x: &BitString, sigma: f64) -> Result<DiscreteDistribution> {
    check_sigma(sigma)?;
    super::distribution::check_enumerable(x.len())?;
    let stay = (sigma * PI / 2.0).cos().powi(2);
    let spread = (1.0 - stay) / (1u64 << x.len()) as f64;
    let mut probs = vec![spread; 1 << x.len()];
    probs[x.to_index()] += stay;
    DiscreteDistribution::new(x.len(), probs)
}

/// Law of the `data_qubits` after running `circuit` on `|0...0>`.
pub fn induced_distribution(
    circuit: &Circuit,
    data_qubits: &[usize],
) -> Result<DiscreteDistribution> {
    super::distribution::check_enumerable(data_qubits.len())?;
    let mut state = StateVector::zero(circuit.num_qubits());
    state.run(circuit)?;
    let mut probs = state.marginal(data_qubits)?;
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);
    DiscreteDistribution::new(data_qubits.len(), probs)
}
