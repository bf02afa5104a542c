use super::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::simulator::{Circuit, Gate};

fn gray(l: usize) -> usize {
    l ^ (l >> 1)
}

/// Marginal tables over the first `j` qubits for `j = 0..=n`; entry `[j][c]`
/// is the mass of prefix `c` (big-endian, `j` bits).
fn prefix_masses(dist: &DiscreteDistribution) -> Vec<Vec<f64>> {
    let n = dist.n();
    let mut levels = vec![Vec::new(); n + 1];
    levels[n] = dist.probs().to_vec();
    for j in (0..n).rev() {
        levels[j] = levels[j + 1].chunks(2).map(|p| p[0] + p[1]).collect();
    }
    levels
}

/// Rotation angles feeding the CNOT cascade: `theta = 2^-k * M^T alpha`
/// with `M[c][l] = (-1)^popcount(c & gray(l))`.
fn cascade_angles(alphas: &[f64]) -> Vec<f64> {
    let size = alphas.len();
    let scale = 1.0 / size as f64;
    (0..size)
        .map(|l| {
            let g = gray(l);
            scale
                * alphas
                    .iter()
                    .enumerate()
                    .map(|(c, a)| {
                        if (c & g).count_ones() % 2 == 0 {
                            *a
                        } else {
                            -*a
                        }
                    })
                    .sum::<f64>()
        })
        .collect()
}

/// Loads `sqrt(P)` into an `n`-qubit register starting from `|0...0>`.
///
/// Qubit `k` receives a rotation uniformly controlled by qubits `0..k`,
/// expanded into `2^k` RY gates interleaved with `2^k` CNOTs. Every rotation
/// is emitted even when its angle is zero, so the gate count is always
/// `2^(n+1) - 3`.
pub fn mottonen_circuit(target: &DiscreteDistribution) -> Result<Circuit> {
    let n = target.n();
    if n == 0 {
        return Err(Error::invalid("cannot load a 0-bit distribution"));
    }
    let levels = prefix_masses(target);
    let mut circuit = Circuit::new(n);
    for k in 0..n {
        let next = &levels[k + 1];
        let alphas: Vec<f64> = (0..1usize << k)
            .map(|c| 2.0 * next[2 * c + 1].sqrt().atan2(next[2 * c].sqrt()))
            .collect();
        if k == 0 {
            circuit.push(Gate::ry(0, alphas[0]))?;
            continue;
        }
        let size = 1usize << k;
        for (l, theta) in cascade_angles(&alphas).into_iter().enumerate() {
            circuit.push(Gate::ry(k, theta))?;
            let changed = gray(l) ^ gray((l + 1) % size);
            let bit = changed.trailing_zeros() as usize;
            circuit.push(Gate::cnot(k - 1 - bit, k))?;
        }
    }
    Ok(circuit)
}
