//! Property-based invariants of the state/evolution/solver stack.

use std::f64::consts::TAU;

use orthotime::{
    bound_rhs, classify, evolve, haar_sample, sample_generic_reachable, speed_report,
    survival_amplitude, Complex64, EvolutionPhase, HamiltonianSpec, PureState2Q,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-12;

fn haar_from_seed(seed: u64) -> PureState2Q {
    haar_sample(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn rotate_phases(state: &PureState2Q, phases: [f64; 4]) -> PureState2Q {
    let mut c = *state.amplitudes();
    for (amp, phi) in c.iter_mut().zip(phases) {
        *amp *= Complex64::from_polar(1.0, phi);
    }
    PureState2Q::new(c, true).expect("phase rotation preserves the norm")
}

proptest! {
    /// Time evolution is unitary: the norm stays 1.
    #[test]
    fn evolution_preserves_norm(seed: u64, t in -50.0f64..50.0) {
        let state = haar_from_seed(seed);
        let ham = HamiltonianSpec::default();
        let evolved = evolve(&state, t, &ham);
        prop_assert!((evolved.norm_sqr() - 1.0).abs() <= TOL);
    }

    /// The survival amplitude is a polynomial in e^{-i theta}, hence
    /// 2 pi periodic in theta.
    #[test]
    fn survival_amplitude_is_periodic(seed: u64, theta in 0.0f64..TAU) {
        let state = haar_from_seed(seed);
        let here = survival_amplitude(&state, EvolutionPhase::new(theta).unwrap());
        let next = survival_amplitude(&state, EvolutionPhase::new(theta + TAU).unwrap());
        prop_assert!((here - next).norm() <= TOL);
    }

    /// Computing <psi|psi(t)> by evolving the state agrees with the
    /// level-population formula.
    #[test]
    fn survival_amplitude_agrees_with_evolution(seed: u64, t in -20.0f64..20.0) {
        let state = haar_from_seed(seed);
        let ham = HamiltonianSpec::default();
        let via_overlap = state.overlap(&evolve(&state, t, &ham));
        let via_formula =
            survival_amplitude(&state, EvolutionPhase::from_time(t, &ham).unwrap());
        prop_assert!((via_overlap - via_formula).norm() <= TOL);
    }

    /// |<psi|psi(t)>| <= 1 always (Cauchy-Schwarz on unit vectors).
    #[test]
    fn survival_magnitude_is_bounded(seed: u64, theta in -10.0f64..10.0) {
        let state = haar_from_seed(seed);
        let s = survival_amplitude(&state, EvolutionPhase::new(theta).unwrap());
        prop_assert!(s.norm() <= 1.0 + TOL);
    }

    /// Classification depends only on the level populations, so per-amplitude
    /// phase rotations cannot change it.
    #[test]
    fn classification_is_phase_invariant(
        seed: u64,
        phases in prop::array::uniform4(0.0f64..TAU),
    ) {
        let state = haar_from_seed(seed);
        let rotated = rotate_phases(&state, phases);
        let before = classify(&state, TOL);
        let after = classify(&rotated, TOL);
        prop_assert_eq!(before.kind, after.kind);
        prop_assert_eq!(before.reachable, after.reachable);
        prop_assert!((before.condition_residual - after.condition_residual).abs() <= TOL);
    }

    /// The entanglement bound is monotonically decreasing in concurrence:
    /// more entanglement permits faster orthogonalization.
    #[test]
    fn bound_rhs_is_monotone_decreasing(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(bound_rhs(lo).unwrap() >= bound_rhs(hi).unwrap() - TOL);
    }

    /// On the quadratic reachable class the bound holds with margin: the
    /// ratio never dips below the right-hand side.
    #[test]
    fn constructed_generic_states_respect_the_bound(seed: u64) {
        let state = sample_generic_reachable(&mut ChaCha8Rng::seed_from_u64(seed));
        let report = speed_report(&state, &HamiltonianSpec::default(), TOL);
        let ratio = report.ratio.expect("constructed states are reachable");
        prop_assert!(ratio >= report.bound_rhs - 1e-9);
        prop_assert!(!report.violates_bound);
    }
}
