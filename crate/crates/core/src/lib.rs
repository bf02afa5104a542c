//! Certified robustness of quantum classifiers against bit-flip perturbations.
//!
//! The crate smooths a basis-embedded quantum classifier over a distribution
//! of Hamming-distant inputs and certifies an ℓ0 radius, either by classical
//! Monte-Carlo sampling or by amplitude estimation on the Grover operator of
//! `classifier ∘ noise preparation`. Everything runs on an exact statevector
//! simulator ([`simulator`]).

pub mod bits;
pub mod certify;
pub mod error;
pub mod preprocess;
pub mod qnn;
pub mod quadro;
pub mod seed;
pub mod simulator;
pub mod smoothing;
pub mod stateprep;

pub use bits::BitString;
pub use error::{Error, Result};
