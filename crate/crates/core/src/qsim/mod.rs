//! Statevector simulation of phase estimation for `e^{−iHt}`.

pub mod evolve;
pub mod qpe;
pub mod shift;
pub mod statevector;

pub use evolve::{
    evolve_exact, evolve_trotter, split_tridiagonal, ExactPropagator, TrotterPropagator,
};
pub use qpe::{
    embed_power_of_two, outcome_to_eigenvalue, overlap_probabilities, run_qpe, sample_outcomes,
    Evolution, QpeResult, SampleSet, MAX_QUBITS,
};
pub use shift::{gershgorin_shift_scale, ShiftScale, DEFAULT_GUARD};
pub use statevector::Statevector;
