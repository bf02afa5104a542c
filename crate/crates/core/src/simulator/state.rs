use num_complex::Complex64 as C64;
use rand::Rng as _;
use rayon::prelude::*;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

use super::circuit::Circuit;
use super::gate::{Gate, Mat2};

/// Registers at or above this many amplitudes are updated in parallel.
const PARALLEL_LEN: usize = 1 << 14;
const SUB_CHUNK: usize = 1 << 12;

/// Dense statevector. Amplitude `i` belongs to basis state `|b>` where
/// qubit 0 is the most significant bit of `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0...0>`.
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << num_qubits];
        amps[index] = C64::new(1.0, 0.0);
        StateVector { num_qubits, amps }
    }

    pub fn from_bits(bits: &BitString) -> Self {
        Self::basis(bits.len(), bits.to_index())
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(Error::invalid("amplitude count must be a power of two"));
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::invalid(format!("state has squared norm {norm}")));
        }
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Tensor product `self ⊗ other`; `other`'s qubits follow `self`'s.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amps,
        }
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        let m = gate.matrix();
        self.apply_unchecked(gate, &m);
        Ok(())
    }

    /// Applies `m` in place of the gate's own operator. Used for derivative
    /// matrices in adjoint differentiation; `m` need not be unitary.
    pub(crate) fn apply_with_matrix(&mut self, gate: &Gate, m: &Mat2) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.apply_unchecked(gate, m);
        Ok(())
    }

    fn apply_unchecked(&mut self, gate: &Gate, m: &Mat2) {
        let n = self.num_qubits;
        let (mut cmask, mut cval) = (0usize, 0usize);
        for c in &gate.controls {
            let bit = 1 << (n - 1 - c.qubit);
            cmask |= bit;
            if c.on_one {
                cval |= bit;
            }
        }
        for &t in &gate.targets {
            apply_pairwise(&mut self.amps, n - 1 - t, m, cmask, cval);
        }
    }

    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: circuit.num_qubits(),
            });
        }
        for g in circuit.gates() {
            self.apply_unchecked(g, &g.matrix());
        }
        Ok(())
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Born probabilities of the qubits in `subset`; outcome index is
    /// big-endian in subset order.
    pub fn marginal(&self, subset: &[usize]) -> Result<Vec<f64>> {
        let n = self.num_qubits;
        let mut seen = vec![false; n];
        for &q in subset {
            if q >= n {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: n,
                });
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::OverlappingQubits(q));
            }
        }
        let k = subset.len();
        let shifts: Vec<usize> = subset.iter().map(|&q| n - 1 - q).collect();
        let mut out = vec![0.0; 1 << k];
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let mut o = 0usize;
            for &s in &shifts {
                o = (o << 1) | ((i >> s) & 1);
            }
            out[o] += p;
        }
        Ok(out)
    }

    /// Projective measurement of `qubit` driven by a uniform draw `u` in
    /// `[0, 1)`: the outcome is `1` when `u < P(1)`. The state collapses and
    /// is renormalized.
    pub fn measure(&mut self, qubit: usize, u: f64) -> Result<u8> {
        let p1 = self.marginal(&[qubit])?[1];
        let outcome = u8::from(u < p1);
        let kept = if outcome == 1 { p1 } else { 1.0 - p1 };
        let bit = 1usize << (self.num_qubits - 1 - qubit);
        let scale = 1.0 / kept.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if ((i & bit) != 0) == (outcome == 1) {
                *a *= scale;
            } else {
                *a = C64::new(0.0, 0.0);
            }
        }
        Ok(outcome)
    }

    pub fn expectation_z(&self, qubit: usize) -> Result<f64> {
        let p = self.marginal(&[qubit])?;
        Ok(p[0] - p[1])
    }

    /// Seeded measurement of `subset`; returns counts indexed like [`Self::marginal`].
    pub fn sample(&self, subset: &[usize], shots: u64, seed: u64) -> Result<Vec<u64>> {
        if shots == 0 {
            return Err(Error::invalid("shots must be positive"));
        }
        let probs = self.marginal(subset)?;
        Ok(sample_counts(&probs, shots, seed))
    }
}

/// Draws `shots` outcomes from an (approximately normalized) probability table.
pub(crate) fn sample_counts(probs: &[f64], shots: u64, seed: u64) -> Vec<u64> {
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in probs {
        acc += p;
        cdf.push(acc);
    }
    let total = acc;
    let mut rng = rng_from_seed(seed);
    let last = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
    let mut counts = vec![0u64; probs.len()];
    for _ in 0..shots {
        let u = rng.gen::<f64>() * total;
        let i = cdf.partition_point(|&c| c <= u).min(last);
        counts[i] += 1;
    }
    counts
}

#[inline]
fn mix(m: &Mat2, lo: &mut C64, hi: &mut C64) {
    let (a, b) = (*lo, *hi);
    *lo = m[0][0] * a + m[0][1] * b;
    *hi = m[1][0] * a + m[1][1] * b;
}

fn mix_span(m: &Mat2, base: usize, lo: &mut [C64], hi: &mut [C64], cmask: usize, cval: usize) {
    if cmask == 0 {
        for (l, h) in lo.iter_mut().zip(hi.iter_mut()) {
            mix(m, l, h);
        }
    } else {
        for (k, (l, h)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
            if (base + k) & cmask == cval {
                mix(m, l, h);
            }
        }
    }
}

/// Mixes every amplitude pair differing in bit `bit` whose index matches the
/// control pattern. Each pair is independent, so the result does not depend
/// on how the work is chunked.
fn apply_pairwise(amps: &mut [C64], bit: usize, m: &Mat2, cmask: usize, cval: usize) {
    apply_pairwise_with(amps, bit, m, cmask, cval, amps.len() >= PARALLEL_LEN)
}

fn apply_pairwise_with(
    amps: &mut [C64],
    bit: usize,
    m: &Mat2,
    cmask: usize,
    cval: usize,
    parallel: bool,
) {
    let stride = 1usize << bit;
    let block = stride * 2;
    if !parallel {
        for (bi, chunk) in amps.chunks_mut(block).enumerate() {
            let (lo, hi) = chunk.split_at_mut(stride);
            mix_span(m, bi * block, lo, hi, cmask, cval);
        }
    } else if stride <= SUB_CHUNK {
        let min_len = (SUB_CHUNK / block).max(1);
        amps.par_chunks_mut(block)
            .with_min_len(min_len)
            .enumerate()
            .for_each(|(bi, chunk)| {
                let (lo, hi) = chunk.split_at_mut(stride);
                mix_span(m, bi * block, lo, hi, cmask, cval);
            });
    } else {
        for (bi, chunk) in amps.chunks_mut(block).enumerate() {
            let (lo, hi) = chunk.split_at_mut(stride);
            lo.par_chunks_mut(SUB_CHUNK)
                .zip(hi.par_chunks_mut(SUB_CHUNK))
                .enumerate()
                .for_each(|(ci, (l, h))| {
                    mix_span(m, bi * block + ci * SUB_CHUNK, l, h, cmask, cval)
                });
        }
    }
}

pub fn apply_gate(mut state: StateVector, gate: &Gate) -> Result<StateVector> {
    state.apply(gate)?;
    Ok(state)
}

pub fn run_circuit(mut initial: StateVector, circuit: &Circuit) -> Result<StateVector> {
    initial.run(circuit)?;
    Ok(initial)
}

pub fn marginal_probabilities(state: &StateVector, subset: &[usize]) -> Result<Vec<f64>> {
    state.marginal(subset)
}

pub fn sample_bitstrings(
    state: &StateVector,
    subset: &[usize],
    shots: u64,
    seed: u64,
) -> Result<Vec<u64>> {
    state.sample(subset, shots, seed)
}

pub fn expectation_z(state: &StateVector, qubit: usize) -> Result<f64> {
    state.expectation_z(qubit)
}
