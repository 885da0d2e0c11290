//! How fast can a two-qubit pure state evolve into an orthogonal one?
//!
//! Under the local Hamiltonian `H = epsilon (n_A + n_B)` the survival
//! amplitude of a state with basis amplitudes `(c0, c1, c2, c3)` is
//!
//! `s(theta) = |c0|^2 + (|c1|^2 + |c2|^2) e^{-i theta} + |c3|^2 e^{-2 i theta}`
//!
//! with `theta = epsilon t / hbar`. This crate classifies states by whether
//! `s` can reach zero, solves for the first crossing time in closed form,
//! computes the standard quantum-speed-limit times and the concurrence,
//! checks the entanglement bound `tau / T >= sqrt(2 (1 + C)) / pi *
//! arccos((C - 1)/(C + 1))`, and cross-checks everything against a numeric
//! oracle that knows nothing about the algebra.
//!
//! Module map:
//! - [`state`]: states, construction, sampling, concurrence.
//! - [`evolution`]: time evolution, survival amplitude, energy moments,
//!   speed-limit times.
//! - [`solver`]: classification, closed-form crossing times, the
//!   entanglement bound, aggregated reports.
//! - [`oracle`]: grid-scan root finding and purity-based concurrence for
//!   independent verification.

pub mod error;
pub mod evolution;
pub mod oracle;
pub mod solver;
pub mod state;

pub use error::{Error, Result};
pub use evolution::{
    energy_moments, evolve, qsl_times, survival_amplitude, EnergyMoments, EvolutionPhase,
    HamiltonianSpec, QslTimes,
};
pub use oracle::{oracle_concurrence, reduced_purity, scan_tau, scan_tau_default, OracleResult};
pub use solver::{
    bound_rhs, classify, first_orthogonal_time, speed_report, OrthoClass, OrthoKind,
    RatioDenominator, SpeedReport,
};
pub use state::{
    family_state, haar_sample, sample_generic_reachable, sample_singular_reachable,
    EntanglementValue, PureState2Q, StateJson,
};

pub use num_complex::Complex64;
