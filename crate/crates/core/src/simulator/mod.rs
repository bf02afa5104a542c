//! Exact statevector simulation.

mod circuit;
mod gate;
mod state;

pub use circuit::{controlled_wrap, inverse_circuit, Circuit};
pub use gate::{dagger, kind_matrix, matmul, ry_matrix, rz_matrix, Control, Gate, GateKind, Mat2};
pub use state::{
    apply_gate, expectation_z, marginal_probabilities, run_circuit, sample_bitstrings, StateVector,
};
