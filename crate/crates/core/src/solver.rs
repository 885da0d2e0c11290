use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::evolution::{qsl_times, HamiltonianSpec, QslTimes};
use crate::state::PureState2Q;

/// Default tolerance for the exact algebraic reachability conditions.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-12;

/// Margin below the bound before a ratio counts as a violation, so that
/// exact-equality cases are not flagged through rounding.
pub const VIOLATION_MARGIN: f64 = 1e-12;

/// Relative difference above which the two closed-form speed-limit
/// combinations are reported as disagreeing.
const CONFLICT_REL_TOL: f64 = 1e-12;

/// Structure of the survival amplitude `s(theta) = p0 + p12 e^{-i theta}
/// + p3 e^{-2 i theta}` seen as a polynomial in `e^{-i theta}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrthoKind {
    /// `p3 > tol`: a genuine quadratic in `e^{-i theta}`.
    Generic,
    /// `p3 <= tol < p12`: the polynomial degenerates to linear.
    SingularLinear,
    /// Only `p0` is occupied; `s` is constant and never vanishes.
    Constant,
}

impl std::fmt::Display for OrthoKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OrthoKind::Generic => "Generic",
            OrthoKind::SingularLinear => "SingularLinear",
            OrthoKind::Constant => "Constant",
        })
    }
}

/// Classification of a state by whether (and how) its survival amplitude
/// can reach zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthoClass {
    pub kind: OrthoKind,
    /// Whether an orthogonal state is reached at some finite time.
    pub reachable: bool,
    /// Distance from exactly satisfying the reachability condition:
    /// `max(||c0|^2 - |c3|^2|, max(0, 1/4 - |c0|^2))` for the quadratic
    /// case, `||c0|^2 - 1/2|` for the linear case. Constant states have no
    /// condition to satisfy; there the field reports `|c0|^2`, the level at
    /// which `|s|` stays pinned.
    pub condition_residual: f64,
}

/// Classifies a state.
///
/// A quadratic-case state is reachable iff its root of `s` can sit on the
/// unit circle: `|c0|^2 = |c3|^2` within `tol` and `|c0|^2 >= 1/4 - tol`.
/// A linear-case state is reachable iff `|c0|^2 = 1/2` within `tol`.
/// States missing a condition are reported unreachable, with
/// `condition_residual` saying by how much they miss it.
pub fn classify(state: &PureState2Q, tol: f64) -> OrthoClass {
    let p = state.probabilities();
    let (p0, p12, p3) = (p[0], p[1] + p[2], p[3]);
    if p3 > tol {
        let balance = (p0 - p3).abs();
        let weight_short = (0.25 - p0).max(0.0);
        OrthoClass {
            kind: OrthoKind::Generic,
            reachable: balance <= tol && weight_short <= tol,
            condition_residual: balance.max(weight_short),
        }
    } else if p12 > tol {
        let deviation = (p0 - 0.5).abs();
        OrthoClass {
            kind: OrthoKind::SingularLinear,
            reachable: deviation <= tol,
            condition_residual: deviation,
        }
    } else {
        OrthoClass {
            kind: OrthoKind::Constant,
            reachable: false,
            condition_residual: p0,
        }
    }
}

/// First phase at which a reachable quadratic-case state is orthogonal:
/// `theta* = arccos(1 - 1/(2 |c0|^2))`, in `[pi/2, pi]` on the reachable
/// set. The argument is clamped so that tolerance-level excursions outside
/// `[-1, 1]` (boundary states with `|c0|^2` a hair below 1/4) still yield
/// the double root at `theta = pi`.
fn generic_crossing_phase(p0: f64) -> f64 {
    (1.0 - 1.0 / (2.0 * p0)).clamp(-1.0, 1.0).acos()
}

fn tau_for_class(state: &PureState2Q, ham: &HamiltonianSpec, class: &OrthoClass) -> Option<f64> {
    if !class.reachable {
        return None;
    }
    let theta = match class.kind {
        OrthoKind::Generic => generic_crossing_phase(state.probabilities()[0]),
        // The linear case crosses zero exactly when e^{-i theta} = -1.
        OrthoKind::SingularLinear => PI,
        OrthoKind::Constant => return None,
    };
    Some(ham.time_at(theta))
}

/// Smallest `t > 0` with `<psi(0)|psi(t)> = 0`, in closed form, or `None`
/// when the state never reaches an orthogonal one.
pub fn first_orthogonal_time(state: &PureState2Q, ham: &HamiltonianSpec, tol: f64) -> Option<f64> {
    tau_for_class(state, ham, &classify(state, tol))
}

/// Right-hand side of the entanglement speed bound,
///
/// `bound_rhs(C) = sqrt(2 (1 + C)) / pi * arccos((C - 1)/(C + 1))`,
///
/// monotonically decreasing from `sqrt(2)` at `C = 0` to exactly `1` at
/// `C = 1`. Inputs outside `[0, 1]` are rejected.
pub fn bound_rhs(concurrence: f64) -> Result<f64> {
    if !concurrence.is_finite() {
        return Err(Error::NonFinite {
            context: "concurrence",
        });
    }
    if !(0.0..=1.0).contains(&concurrence) {
        return Err(Error::Domain {
            name: "concurrence",
            value: concurrence,
            min: 0.0,
            max: 1.0,
        });
    }
    let scale = (2.0 * (1.0 + concurrence)).sqrt();
    let angle = ((concurrence - 1.0) / (concurrence + 1.0)).acos();
    Ok(scale * angle / PI)
}

/// Which speed-limit time divides `tau` in [`SpeedReport::ratio`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RatioDenominator {
    #[serde(rename = "t_min")]
    TMin,
    #[serde(rename = "t_min1")]
    TMin1,
}

impl std::fmt::Display for RatioDenominator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RatioDenominator::TMin => "t_min",
            RatioDenominator::TMin1 => "t_min1",
        })
    }
}

/// Full orthogonalization-speed analysis of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpeedReport {
    pub ortho: OrthoClass,
    /// First orthogonality time, when reachable.
    pub tau: Option<f64>,
    pub qsl: QslTimes,
    /// Concurrence clamped to `[0, 1]`.
    pub concurrence: f64,
    /// `tau` divided by the applicable speed-limit time (see
    /// `denominator_used`); absent when `tau` is.
    pub ratio: Option<f64>,
    /// `TMin1` for quadratic-case reachable states (the bound's algebra is
    /// built on the balanced-manifold form), `TMin` for linear-case ones;
    /// `None` exactly when `ratio` is absent.
    pub denominator_used: Option<RatioDenominator>,
    /// Entanglement bound evaluated at this state's concurrence.
    pub bound_rhs: f64,
    /// Whether `ratio < bound_rhs - VIOLATION_MARGIN`: the state beats the
    /// claimed entanglement speed bound.
    pub violates_bound: bool,
    /// True when `t_min` and `t_min1` are both defined yet disagree; the
    /// min-rule combination and the balanced-manifold closed form coincide
    /// only at maximal entanglement.
    pub t_min_conflict: bool,
}

/// Aggregates classification, the closed-form crossing time, the
/// speed-limit times, concurrence, and the bound check for one state.
pub fn speed_report(state: &PureState2Q, ham: &HamiltonianSpec, tol: f64) -> SpeedReport {
    let ortho = classify(state, tol);
    let tau = tau_for_class(state, ham, &ortho);
    let qsl = qsl_times(state, ham, tol);
    let concurrence = state.concurrence().clamped();
    let bound = bound_rhs(concurrence).expect("clamped concurrence is always in domain");

    let (ratio, denominator_used) = match (tau, qsl.t_min1, qsl.t_min) {
        (Some(t), Some(d), _) => (Some(t / d), Some(RatioDenominator::TMin1)),
        (Some(t), None, Some(d)) => (Some(t / d), Some(RatioDenominator::TMin)),
        _ => (None, None),
    };
    let violates_bound = ratio.is_some_and(|r| r < bound - VIOLATION_MARGIN);
    let t_min_conflict = matches!(
        (qsl.t_min, qsl.t_min1),
        (Some(a), Some(b)) if (a - b).abs() > CONFLICT_REL_TOL * a.max(b)
    );

    SpeedReport {
        ortho,
        tau,
        qsl,
        concurrence,
        ratio,
        denominator_used,
        bound_rhs: bound,
        violates_bound,
        t_min_conflict,
    }
}
