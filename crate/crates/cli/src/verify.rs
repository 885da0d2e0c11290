use std::fmt::Write as _;

use orthotime::{
    oracle_concurrence, sample_generic_reachable, sample_singular_reachable, scan_tau_default,
    speed_report, HamiltonianSpec, OrthoKind, PureState2Q, StateJson,
};

use crate::streams::sample_stream;

/// Allowed closed-form vs oracle disagreement on tau, in units of
/// `hbar / epsilon`.
pub const TAU_TOLERANCE: f64 = 1e-6;

/// Allowed disagreement between the two concurrence computations.
pub const CONCURRENCE_TOLERANCE: f64 = 1e-12;

/// Slack on the entanglement bound for quadratic-case states (mathematically
/// `ratio >= bound_rhs` holds exactly on the whole class).
const GENERIC_BOUND_MARGIN: f64 = 1e-9;

/// Linear-case states must have `ratio = 1` to this accuracy.
const SINGULAR_RATIO_TOL: f64 = 1e-12;

const CLASSIFY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub n_generic: usize,
    pub n_singular: usize,
    pub seed: u64,
    /// Self-test hook: flips the sign of the arccos argument in the
    /// quadratic-case closed form, which must make the oracle comparison
    /// fail.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n_generic: 500,
            n_singular: 500,
            seed: 7,
            inject_fault: false,
        }
    }
}

/// One disagreement, carrying the offending state for reproduction.
#[derive(Debug, Clone)]
pub struct VerifyFailure {
    pub label: String,
    pub reason: String,
    pub state: StateJson,
}

/// Outcome of the closed-form vs oracle comparison suite.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub n_generic: usize,
    pub n_singular: usize,
    pub seed: u64,
    pub max_tau_delta: f64,
    pub max_concurrence_delta: f64,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Constructs reachable states of both classes directly on the exact
/// condition sets (the sets have measure zero, so filtering generic samples
/// would never terminate) and checks, for every state:
///
/// - the closed-form crossing time against the default-grid scan oracle;
/// - the determinant concurrence against the purity concurrence;
/// - the entanglement-bound arithmetic (`ratio >= bound_rhs` for the
///   quadratic class, `ratio = 1` for the linear class).
///
/// Generic state `i` draws from stream `i` of the master seed; singular
/// state `j` from stream `n_generic + j`.
pub fn run(config: &VerifyConfig) -> VerifyOutcome {
    let ham = HamiltonianSpec::default();
    let mut outcome = VerifyOutcome {
        n_generic: config.n_generic,
        n_singular: config.n_singular,
        seed: config.seed,
        max_tau_delta: 0.0,
        max_concurrence_delta: 0.0,
        failures: Vec::new(),
    };
    for i in 0..config.n_generic {
        let state = sample_generic_reachable(&mut sample_stream(config.seed, i as u64));
        check_state(&state, &ham, config, format!("generic #{i}"), &mut outcome);
    }
    for j in 0..config.n_singular {
        let index = (config.n_generic + j) as u64;
        let state = sample_singular_reachable(&mut sample_stream(config.seed, index));
        check_state(&state, &ham, config, format!("singular #{j}"), &mut outcome);
    }
    outcome
}

fn check_state(
    state: &PureState2Q,
    ham: &HamiltonianSpec,
    config: &VerifyConfig,
    label: String,
    outcome: &mut VerifyOutcome,
) {
    let fail = |reason: String, outcome: &mut VerifyOutcome| {
        outcome.failures.push(VerifyFailure {
            label: label.clone(),
            reason,
            state: StateJson::from_state(state),
        });
    };

    let report = speed_report(state, ham, CLASSIFY_TOL);
    let (Some(tau_closed), Some(ratio)) = (report.tau, report.ratio) else {
        fail(
            format!(
                "constructed state was not classified reachable (kind {}, residual {:.3e})",
                report.ortho.kind, report.ortho.condition_residual
            ),
            outcome,
        );
        return;
    };

    let tau_closed = if config.inject_fault && report.ortho.kind == OrthoKind::Generic {
        let p0 = state.probabilities()[0];
        ham.time_at((-(1.0 - 1.0 / (2.0 * p0))).clamp(-1.0, 1.0).acos())
    } else {
        tau_closed
    };

    let oracle = scan_tau_default(state, ham);
    if let Some(tau_oracle) = oracle.tau_numeric {
        let delta = (tau_closed - tau_oracle).abs();
        outcome.max_tau_delta = outcome.max_tau_delta.max(delta);
        if delta > TAU_TOLERANCE * ham.hbar() / ham.epsilon() {
            fail(
                format!("tau mismatch: closed {tau_closed}, oracle {tau_oracle}"),
                outcome,
            );
        }
    } else {
        fail(
            format!(
                "oracle found no zero (min |s| = {:.3e} at theta = {:.6})",
                oracle.min_magnitude, oracle.theta_at_min
            ),
            outcome,
        );
    }

    let c_state = state.concurrence().value();
    let c_oracle = oracle_concurrence(state);
    let delta = (c_state - c_oracle).abs();
    outcome.max_concurrence_delta = outcome.max_concurrence_delta.max(delta);
    if delta > CONCURRENCE_TOLERANCE {
        fail(
            format!("concurrence mismatch: determinant {c_state}, purity {c_oracle}"),
            outcome,
        );
    }

    match report.ortho.kind {
        OrthoKind::Generic => {
            if ratio < report.bound_rhs - GENERIC_BOUND_MARGIN {
                fail(
                    format!(
                        "bound violated on the quadratic class: ratio {ratio} < rhs {}",
                        report.bound_rhs
                    ),
                    outcome,
                );
            }
        }
        OrthoKind::SingularLinear => {
            if (ratio - 1.0).abs() > SINGULAR_RATIO_TOL {
                fail(format!("linear-case ratio {ratio} differs from 1"), outcome);
            }
        }
        OrthoKind::Constant => unreachable!("reachable states are never constant"),
    }
}

/// Stable summary block; the two "max" lines are the quantities the
/// acceptance checks read back.
pub fn render_summary(outcome: &VerifyOutcome) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "verified {} generic and {} singular constructed states (seed {})",
        outcome.n_generic, outcome.n_singular, outcome.seed
    )
    .unwrap();
    writeln!(
        out,
        "max |tau_closed - tau_oracle| = {:.3e} (tolerance {:e})",
        outcome.max_tau_delta, TAU_TOLERANCE
    )
    .unwrap();
    writeln!(
        out,
        "max |concurrence - oracle_concurrence| = {:.3e} (tolerance {:e})",
        outcome.max_concurrence_delta, CONCURRENCE_TOLERANCE
    )
    .unwrap();
    if outcome.passed() {
        writeln!(out, "result: PASS").unwrap();
    } else {
        writeln!(out, "result: FAIL ({} failures)", outcome.failures.len()).unwrap();
    }
    out
}

/// One line per disagreement, with the state inlined as JSON.
pub fn render_failures(outcome: &VerifyOutcome) -> String {
    let mut out = String::new();
    for failure in &outcome.failures {
        let state = serde_json::to_string(&failure.state).expect("state serializes");
        writeln!(out, "FAIL [{}] {}", failure.label, failure.reason).unwrap();
        writeln!(out, "  state: {state}").unwrap();
    }
    out
}
