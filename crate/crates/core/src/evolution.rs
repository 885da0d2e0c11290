use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::PureState2Q;

/// Number of excited qubits in each basis state, i.e. the energy of basis
/// state `k` is `LEVELS[k] * epsilon`.
const LEVELS: [f64; 4] = [0.0, 1.0, 1.0, 2.0];

/// The local two-level Hamiltonian `H = epsilon (n_A + n_B)`: each qubit
/// contributes `epsilon` per excitation, so the basis energies over
/// `(|00>, |01>, |10>, |11>)` are `(0, eps, eps, 2 eps)`.
///
/// `epsilon` and `hbar` are kept explicit so times can be reported in any
/// unit system; both must be finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HamiltonianSpec {
    epsilon: f64,
    hbar: f64,
}

impl HamiltonianSpec {
    pub fn new(epsilon: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [("epsilon", epsilon), ("hbar", hbar)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { context: name });
            }
            if value <= 0.0 {
                return Err(Error::Domain {
                    name,
                    value,
                    min: f64::MIN_POSITIVE,
                    max: f64::INFINITY,
                });
            }
        }
        Ok(Self { epsilon, hbar })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Dimensionless phase `theta = epsilon t / hbar` accumulated by one
    /// excitation after time `t`.
    pub fn phase_at(&self, t: f64) -> f64 {
        self.epsilon * t / self.hbar
    }

    /// Time at which the phase reaches `theta`: `t = hbar theta / epsilon`.
    pub fn time_at(&self, theta: f64) -> f64 {
        self.hbar * theta / self.epsilon
    }
}

impl Default for HamiltonianSpec {
    /// Natural units: `epsilon = hbar = 1`.
    fn default() -> Self {
        Self {
            epsilon: 1.0,
            hbar: 1.0,
        }
    }
}

/// Dimensionless evolution phase `theta = epsilon t / hbar`. All dynamics
/// depends on time only through this quantity, with period `2 pi`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EvolutionPhase(f64);

impl EvolutionPhase {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite { context: "theta" });
        }
        Ok(Self(theta))
    }

    pub fn from_time(t: f64, ham: &HamiltonianSpec) -> Result<Self> {
        Self::new(ham.phase_at(t))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn to_time(self, ham: &HamiltonianSpec) -> f64 {
        ham.time_at(self.0)
    }
}

/// Evolves `state` for time `t` under `exp(-i H t / hbar)`: amplitude `k`
/// picks up the phase `exp(-i LEVELS[k] theta)`.
pub fn evolve(state: &PureState2Q, t: f64, ham: &HamiltonianSpec) -> PureState2Q {
    debug_assert!(t.is_finite(), "evolution time must be finite");
    let theta = ham.phase_at(t);
    let c = state.amplitudes();
    let mut out = *c;
    for (k, z) in out.iter_mut().enumerate() {
        *z *= Complex64::from_polar(1.0, -LEVELS[k] * theta);
    }
    PureState2Q::from_amplitudes_unchecked(out)
}

/// Survival amplitude `s(theta) = <psi(0)|psi(t)>` as a function of the
/// dimensionless phase:
///
/// `s(theta) = p0 + (p1 + p2) e^{-i theta} + p3 e^{-2 i theta}`
///
/// with `p_k = |c_k|^2`. Its modulus never exceeds 1, it is `2 pi`-periodic,
/// and `s(0) = 1`.
pub fn survival_amplitude(state: &PureState2Q, phase: EvolutionPhase) -> Complex64 {
    let p = state.probabilities();
    survival_from_weights(p[0], p[1] + p[2], p[3], phase.radians())
}

/// Shared kernel for the survival amplitude given the basis weights grouped
/// by energy level.
pub(crate) fn survival_from_weights(p0: f64, p12: f64, p3: f64, theta: f64) -> Complex64 {
    Complex64::new(p0, 0.0)
        + p12 * Complex64::from_polar(1.0, -theta)
        + p3 * Complex64::from_polar(1.0, -2.0 * theta)
}

/// Mean and standard deviation of the energy in a given state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyMoments {
    /// `<H> = eps (p1 + p2) + 2 eps p3`, in `[0, 2 eps]`.
    pub mean_e: f64,
    /// `sqrt(<H^2> - <H>^2)`, in `[0, eps]`; clamped at zero against rounding.
    pub std_e: f64,
}

pub fn energy_moments(state: &PureState2Q, ham: &HamiltonianSpec) -> EnergyMoments {
    let p = state.probabilities();
    let eps = ham.epsilon();
    let mean_e = eps * (p[1] + p[2]) + 2.0 * eps * p[3];
    let second = eps * eps * (p[1] + p[2]) + 4.0 * eps * eps * p[3];
    let std_e = (second - mean_e * mean_e).max(0.0).sqrt();
    EnergyMoments { mean_e, std_e }
}

/// Quantum-speed-limit times for reaching an orthogonal state. Each entry is
/// `None` when its defining quantity vanishes (so the bound is vacuous).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QslTimes {
    /// Mean-energy bound `pi hbar / (2 <H>)` (with the ground energy at 0).
    pub t_ml: Option<f64>,
    /// Energy-spread bound `pi hbar / (2 dH)`.
    pub t_mt: Option<f64>,
    /// Combined bound `min(t_ml, t_mt)`; the smaller existing one if only
    /// one is defined.
    pub t_min: Option<f64>,
    /// Modulus closed form `pi hbar / (2 sqrt(2) eps |c0|)`, defined only on
    /// the balanced manifold `|c0| = |c3| > 0` where it is claimed to be the
    /// operative limit.
    pub t_min1: Option<f64>,
}

/// Computes the speed-limit times.
///
/// Gating: `t_ml` requires `<H> > tol * eps`, `t_mt` requires
/// `dH > tol * eps`, and `t_min1` requires `||c0| - |c3|| <= tol` together
/// with `|c0| > tol`. When both `t_ml` and `t_mt` exist,
/// `t_min = min(t_ml, t_mt)` exactly.
pub fn qsl_times(state: &PureState2Q, ham: &HamiltonianSpec, tol: f64) -> QslTimes {
    let eps = ham.epsilon();
    let hbar = ham.hbar();
    let moments = energy_moments(state, ham);

    let t_ml =
        (moments.mean_e > tol * eps).then(|| std::f64::consts::PI * hbar / (2.0 * moments.mean_e));
    let t_mt =
        (moments.std_e > tol * eps).then(|| std::f64::consts::PI * hbar / (2.0 * moments.std_e));
    let t_min = match (t_ml, t_mt) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b),
        (None, None) => None,
    };

    let p = state.probabilities();
    let (a0, a3) = (p[0].sqrt(), p[3].sqrt());
    let t_min1 = ((a0 - a3).abs() <= tol && a0 > tol)
        .then(|| std::f64::consts::PI * hbar / (2.0 * std::f64::consts::SQRT_2 * eps * a0));

    QslTimes {
        t_ml,
        t_mt,
        t_min,
        t_min1,
    }
}
