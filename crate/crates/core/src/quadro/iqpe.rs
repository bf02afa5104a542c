use std::f64::consts::PI;
use std::io::Write;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::seed::rng_from_seed;
use crate::simulator::{Circuit, Gate, StateVector};

/// One iteration of the iterative phase estimation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationRecord {
    /// The controlled operator was applied `2^j` times.
    pub j: usize,
    /// Ancilla phase correction applied before the final Hadamard.
    pub correction: f64,
    pub zeros: u64,
    pub ones: u64,
    pub bit: u8,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseEstimate {
    /// `0.b1 b2 ... bm` in binary.
    pub phi_hat: f64,
    /// `b1..bm`, most significant first.
    pub bits: Vec<u8>,
    pub a_hat: f64,
    /// `sin^2(pi * max(0, fold(phi_hat) - 2^-m))`.
    pub a_lower: f64,
    /// Grover applications, counting every shot as a fresh circuit execution.
    pub oracle_calls: u64,
    pub classifier_calls: u64,
    pub trace: Vec<IterationRecord>,
}

/// `sin^2(pi * phi)`.
pub fn amplitude_from_phase(phi: f64) -> f64 {
    (PI * phi).sin().powi(2)
}

/// Ancilla phase correction for the iteration with `2^j` applications,
/// given the bits already read (`bits[k]` is `b_(k+1)`).
fn correction(bits: &[u8], j: usize) -> f64 {
    -2.0 * PI
        * (j + 1..bits.len())
            .map(|k| f64::from(bits[k]) * 0.5f64.powi((k - j + 1) as i32))
            .sum::<f64>()
}

/// Single-ancilla iterative phase estimation of `q` on `a|0...0>`.
///
/// The ancilla is appended after `q`'s register. Bits are read from least
/// to most significant; each bit takes `shots_per_bit` rounds of
/// `|+>`, controlled-`q^(2^j)`, phase correction, Hadamard and measurement,
/// and the majority outcome is kept. The system register is carried across
/// all rounds, so measurements collapse it towards one eigenphase branch;
/// only the ancilla is reset.
pub fn iqpe_phase(
    q: &Circuit,
    a: &Circuit,
    m: usize,
    shots_per_bit: u64,
    seed: u64,
) -> Result<PhaseEstimate> {
    if m == 0 || m > 30 {
        return Err(Error::invalid(format!(
            "phase bits must be in 1..=30, got {m}"
        )));
    }
    if shots_per_bit == 0 {
        return Err(Error::invalid("shots_per_bit must be positive"));
    }
    if q.num_qubits() != a.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: a.num_qubits(),
            found: q.num_qubits(),
        });
    }
    let work = a.num_qubits();
    let controlled = q.controlled(work)?;
    let mut rng = rng_from_seed(seed);
    let mut state = StateVector::zero(work + 1);
    state.run(&a.widened(work + 1)?)?;

    let mut bits = vec![0u8; m];
    let mut trace = Vec::with_capacity(m);
    for j in (0..m).rev() {
        let phase = correction(&bits, j);
        let (mut zeros, mut ones) = (0u64, 0u64);
        for _ in 0..shots_per_bit {
            state.apply(&Gate::h(work))?;
            for _ in 0..1usize << j {
                state.run(&controlled)?;
            }
            state.apply(&Gate::rz(work, phase))?;
            state.apply(&Gate::h(work))?;
            if state.measure(work, rng.gen::<f64>())? == 1 {
                ones += 1;
                state.apply(&Gate::x(work))?;
            } else {
                zeros += 1;
            }
        }
        let bit = match ones.cmp(&zeros) {
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Equal => u8::from(rng.gen::<bool>()),
        };
        bits[j] = bit;
        trace.push(IterationRecord {
            j,
            correction: phase,
            zeros,
            ones,
            bit,
        });
    }
    let phi_hat: f64 = bits
        .iter()
        .enumerate()
        .map(|(k, b)| f64::from(*b) * 0.5f64.powi(k as i32 + 1))
        .sum();
    let step = 0.5f64.powi(m as i32);
    let grover = shots_per_bit * ((1u64 << m) - 1);
    Ok(PhaseEstimate {
        phi_hat,
        a_hat: amplitude_from_phase(phi_hat),
        a_lower: amplitude_from_phase((super::fold_phase(phi_hat) - step).max(0.0)),
        bits,
        oracle_calls: grover,
        classifier_calls: 2 * grover,
        trace,
    })
}

/// `run,j,correction,zeros,ones,bit` rows, one per iteration.
pub fn write_trace_csv<W: Write>(runs: &[PhaseEstimate], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["run", "j", "correction", "zeros", "ones", "bit"])?;
    for (r, run) in runs.iter().enumerate() {
        for it in &run.trace {
            w.write_record([
                r.to_string(),
                it.j.to_string(),
                it.correction.to_string(),
                it.zeros.to_string(),
                it.ones.to_string(),
                it.bit.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
