//! Purified loaders: the data register ends in the classical mixture of a
//! smoothing law because every perturbation is recorded on its own ancilla
//! pattern. Data on `0..n`, ancillas on `n..2n`.

use super::{hamming_weights, HammingNoiseSpec};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::simulator::{Circuit, Control, Gate};

/// Angle `theta` with `RY(theta)|0>` putting probability `p` on `|1>`.
fn ry_angle(p: f64) -> f64 {
    2.0 * p.clamp(0.0, 1.0).sqrt().asin()
}

/// Split-and-cyclic-shift network on `qubits` that maps `|0^(m-l) 1^l>` to
/// the equal superposition of all weight-`l` strings, for every `l <= k`.
pub fn dicke_network(circuit: &mut Circuit, qubits: &[usize], k: usize) -> Result<()> {
    let m = qubits.len();
    if k > m {
        return Err(Error::invalid(format!("weight {k} exceeds {m} qubits")));
    }
    // 1-based positions as in the usual statement of the construction.
    let q = |p: usize| qubits[p - 1];
    for top in (2..=m).rev() {
        let span = k.min(top - 1);
        circuit.push(Gate::cnot(q(top - 1), q(top)))?;
        let theta = 2.0 * (1.0 / top as f64).sqrt().acos();
        circuit.push(Gate::cry(q(top), q(top - 1), theta))?;
        circuit.push(Gate::cnot(q(top - 1), q(top)))?;
        for l in 2..=span {
            circuit.push(Gate::cnot(q(top - l), q(top)))?;
            let theta = 2.0 * (l as f64 / top as f64).sqrt().acos();
            circuit.push(
                Gate::ry(q(top - l), theta)
                    .with_controls([Control::one(q(top)), Control::one(q(top - l + 1))]),
            )?;
            circuit.push(Gate::cnot(q(top - l), q(top)))?;
        }
    }
    Ok(())
}

/// Purified exact k-Hamming law around `x` on `2n` qubits with `O(nk)`
/// gates: a unary distance register, a Dicke network spreading each distance
/// over its flip patterns, then the patterns XOR-ed onto `x`.
pub fn hamming_mixture_circuit(spec: &HammingNoiseSpec, x: &BitString) -> Result<Circuit> {
    let n = spec.n;
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let w = hamming_weights(spec)?;
    let mut c = Circuit::new(2 * n);
    let anc: Vec<usize> = (n..2 * n).collect();
    // tail[d] = P(distance >= d); ancilla n - d is one iff distance >= d.
    let mut tail = vec![0.0; spec.k + 2];
    for d in (0..=spec.k).rev() {
        tail[d] = tail[d + 1] + w[d];
    }
    for d in 1..=spec.k {
        let target = anc[n - d];
        if d == 1 {
            c.push(Gate::ry(target, ry_angle(tail[1] / tail[0])))?;
        } else if tail[d - 1] > 0.0 {
            c.push(Gate::cry(
                anc[n - d + 1],
                target,
                ry_angle(tail[d] / tail[d - 1]),
            ))?;
        }
    }
    dicke_network(&mut c, &anc, spec.k)?;
    push_xor_onto(&mut c, x)?;
    Ok(c)
}

/// Purified product law: each bit of `x` flips independently with
/// probability `q`.
pub fn independent_flip_circuit(x: &BitString, q: f64) -> Result<Circuit> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::invalid(format!(
            "flip probability must lie in [0, 1], got {q}"
        )));
    }
    let n = x.len();
    let mut c = Circuit::new(2 * n);
    for i in 0..n {
        c.push(Gate::ry(n + i, ry_angle(q)))?;
    }
    push_xor_onto(&mut c, x)?;
    Ok(c)
}

fn push_xor_onto(c: &mut Circuit, x: &BitString) -> Result<()> {
    let n = x.len();
    for (i, bit) in x.bits().iter().enumerate() {
        if *bit {
            c.push(Gate::x(i))?;
        }
    }
    for i in 0..n {
        c.push(Gate::cnot(n + i, i))?;
    }
    Ok(())
}
