//! Independent numeric verification of the closed-form results.
//!
//! The scan knows nothing about the algebraic solution: it samples the
//! survival-amplitude modulus over one full period and refines every
//! near-zero local minimum by derivative-free bracketing. For precision it
//! works on `|s(theta)|^2` expanded as a quadratic in `cos(theta)` — an
//! algebraic identity of the survival amplitude —
//!
//! `|s|^2 = 4 p0 p3 cos^2(theta) + 2 p12 (p0 + p3) cos(theta)
//!          + (p0 - p3)^2 + p12^2`
//!
//! and evaluates refinement probes in compensated (double-double)
//! arithmetic. Plain f64 summation has an absolute noise floor near 1e-16,
//! which as a modulus is 1e-8 — the size of the default zero threshold;
//! compensation pushes the floor to ~1e-32 so "found" decisions are robust.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::HamiltonianSpec;
use crate::state::PureState2Q;

/// Smallest accepted scan grid; coarser grids cannot reliably bracket the
/// minima of `|s|`.
pub const MIN_GRID_POINTS: usize = 1 << 10;

/// Default scan grid.
pub const DEFAULT_GRID_POINTS: usize = 1 << 20;

/// Default modulus below which a refined minimum counts as a zero.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-8;

/// Default bracket width (in theta) at which refinement stops.
pub const DEFAULT_REFINE_TOL: f64 = 1e-12;

/// Re-synchronize the incremental grid phasor against libm this often.
const RESYNC_INTERVAL: usize = 1 << 12;

/// Result of a numeric scan for zeros of the survival amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleResult {
    /// Whether some refined minimum dropped below the zero threshold.
    pub found: bool,
    /// Time of the smallest qualifying phase, `hbar theta / epsilon`;
    /// present iff `found`.
    pub tau_numeric: Option<f64>,
    /// Global minimum of `|s|` over the period (refined where it matters).
    pub min_magnitude: f64,
    /// Phase in `(0, 2 pi]` at which the minimum was seen.
    pub theta_at_min: f64,
}

/// Unevaluated sum `hi + lo` of two floats (double-double arithmetic).
///
/// The refinement needs to resolve `|s|^2` values down to ~1e-32: the
/// reachability conditions are exact, so for a valid state the minimum sits
/// at the square of amplitude-level rounding (~1e-16)^2, while any single
/// f64 rounding of an O(1) coefficient would bury it at ~1e-16 — i.e. a
/// modulus of 1e-8, the size of the default zero threshold. Both the
/// coefficients and the Horner steps are therefore kept compensated.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    fn from_diff(a: f64, b: f64) -> Self {
        Self::from_sum(a, -b)
    }

    fn from_prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let (hi, lo) = quick_two_sum(s, e + self.lo + other.lo);
        Self { hi, lo }
    }

    fn mul(self, other: Self) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        let (hi, lo) = quick_two_sum(p, e + self.hi * other.lo + self.lo * other.hi);
        Self { hi, lo }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }

    /// Multiplication by an exact power of two.
    fn scale_pow2(self, k: f64) -> Self {
        Self {
            hi: self.hi * k,
            lo: self.lo * k,
        }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Like [`two_sum`] but requires `|a| >= |b|` (or a = 0).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Coefficients of `|s(theta)|^2 = a2 c^2 + a1 c + a0` with `c = cos(theta)`.
#[derive(Debug, Clone, Copy)]
struct MagSqrPoly {
    a2: Dd,
    a1: Dd,
    a0: Dd,
}

impl MagSqrPoly {
    fn for_state(state: &PureState2Q) -> Self {
        let p = state.probabilities();
        let (p0, p3) = (p[0], p[3]);
        let p12 = Dd::from_sum(p[1], p[2]);
        let diff = Dd::from_diff(p0, p3);
        Self {
            a2: Dd::from_prod(p0, p3).scale_pow2(4.0),
            a1: p12.mul(Dd::from_sum(p0, p3)).scale_pow2(2.0),
            a0: diff.mul(diff).add(p12.mul(p12)),
        }
    }

    /// Fast plain-f64 evaluation for the grid pass, where ~1e-16 noise is
    /// far below the refinement trigger.
    #[inline]
    fn eval(&self, c: f64) -> f64 {
        (self.a2.hi * c + self.a1.hi) * c + self.a0.hi
    }

    /// Compensated Horner evaluation for refinement probes, accurate to
    /// ~1e-31 absolute.
    fn eval_compensated(&self, c: f64) -> f64 {
        self.a2
            .mul_f64(c)
            .add(self.a1)
            .mul_f64(c)
            .add(self.a0)
            .value()
    }

    fn eval_at_theta(&self, theta: f64) -> f64 {
        self.eval_compensated(theta.cos())
    }
}

/// Scans `|survival_amplitude|` over `theta` in `(0, 2 pi]` on a uniform
/// grid of `grid_points` points, refines every local minimum that could hide
/// a zero (anything below `max(10 * zero_threshold, 4 * grid_spacing)`,
/// since `|s|` changes by at most twice the spacing between grid points) by
/// golden-section search to bracket width `refine_tol` plus a
/// derivative-sign polish, and reports the smallest phase whose refined
/// magnitude is at most `zero_threshold`.
///
/// When no zero is found, the global minimum over the period is reported
/// instead. The scan is deterministic: identical inputs give bit-identical
/// results.
pub fn scan_tau(
    state: &PureState2Q,
    ham: &HamiltonianSpec,
    grid_points: usize,
    zero_threshold: f64,
    refine_tol: f64,
) -> Result<OracleResult> {
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::InvalidGrid {
            got: grid_points,
            min: MIN_GRID_POINTS,
        });
    }

    let poly = MagSqrPoly::for_state(state);
    let n = grid_points;
    let h = std::f64::consts::TAU / n as f64;
    let trigger = f64::max(10.0 * zero_threshold, 4.0 * h);
    let trigger_sqr = trigger * trigger;

    let (cos_h, sin_h) = (h.cos(), h.sin());

    // Rolling window of squared magnitudes at grid points j-1, j, j+1.
    // Local minima are detected at the middle point; j runs over 1..=n so
    // the window needs values up to j = n + 1 (one step past the period).
    let mut candidates: Vec<f64> = Vec::new(); // theta at candidate minima
    let mut best_grid = (f64::INFINITY, 0.0); // (|s|^2, theta) over 1..=n

    let mut cos_t = 1.0;
    let mut sin_t = 0.0;
    let mut prev2 = f64::INFINITY; // value at j - 1 (j = 0 handled below)
    let mut prev = poly.eval(1.0); // value at j = 0, i.e. theta = 0
    for j in 1..=(n + 1) {
        if j % RESYNC_INTERVAL == 0 {
            let theta = j as f64 * h;
            cos_t = theta.cos();
            sin_t = theta.sin();
        } else {
            let c = cos_t * cos_h - sin_t * sin_h;
            let s = sin_t * cos_h + cos_t * sin_h;
            cos_t = c;
            sin_t = s;
        }
        let value = poly.eval(cos_t);
        // The window is centered on grid index j - 1.
        let center = j - 1;
        if center >= 1 {
            let theta_center = center as f64 * h;
            if prev < best_grid.0 {
                best_grid = (prev, theta_center);
            }
            if prev <= prev2 && prev <= value && prev <= trigger_sqr {
                candidates.push(theta_center);
            }
        }
        prev2 = prev;
        prev = value;
    }

    // Refine candidates and split them into zeros and near-misses.
    let mut refined_best = (f64::INFINITY, 0.0); // (|s|^2 compensated, theta)
    let mut first_zero: Option<(f64, f64)> = None; // (theta, magnitude)
    for &theta_c in &candidates {
        let (theta_hat, value) = golden_section_min(&poly, theta_c - h, theta_c + h, refine_tol);
        let (theta_hat, value) = polish_min(&poly, theta_hat, value, h);
        let magnitude = value.max(0.0).sqrt();
        if value < refined_best.0 {
            refined_best = (value, theta_hat);
        }
        if magnitude <= zero_threshold && first_zero.is_none() {
            // Candidates are visited in increasing theta, so the first
            // qualifying one is the smallest.
            first_zero = Some((theta_hat, magnitude));
        }
    }

    if let Some((theta_zero, _)) = first_zero {
        let (global_value, global_theta) = refined_best;
        return Ok(OracleResult {
            found: true,
            tau_numeric: Some(ham.time_at(theta_zero)),
            min_magnitude: global_value.max(0.0).sqrt(),
            theta_at_min: global_theta,
        });
    }

    // No zero: report the global minimum, re-evaluated in compensated
    // arithmetic at the best grid point in case nothing was refined.
    let grid_value = poly.eval_at_theta(best_grid.1);
    let (value, theta) = if refined_best.0 <= grid_value {
        refined_best
    } else {
        (grid_value, best_grid.1)
    };
    Ok(OracleResult {
        found: false,
        tau_numeric: None,
        min_magnitude: value.max(0.0).sqrt(),
        theta_at_min: theta,
    })
}

/// [`scan_tau`] at the default grid, threshold, and refinement width.
pub fn scan_tau_default(state: &PureState2Q, ham: &HamiltonianSpec) -> OracleResult {
    scan_tau(
        state,
        ham,
        DEFAULT_GRID_POINTS,
        DEFAULT_ZERO_THRESHOLD,
        DEFAULT_REFINE_TOL,
    )
    .expect("default grid satisfies the precondition")
}

/// Tightens a refined minimum by bisecting the sign change of
/// `d|s|^2/dtheta = -sin(theta) (2 a2 cos(theta) + a1)` near `theta_hat`.
///
/// Near a pair of barely-separated zeros (or an exact double root, where
/// `|s|` is quartically flat) the golden-section bracket of one grid
/// candidate need not contain the true minimum, leaving its argmin biased
/// by a few grid spacings. The stationary point itself is still a clean
/// sign change of the derivative, so bisection pins it to ~1e-14. Returns
/// the improved point, or the input when no sign change is found nearby or
/// the polished value is no better.
fn polish_min(poly: &MagSqrPoly, theta_hat: f64, value: f64, h: f64) -> (f64, f64) {
    let slope = |theta: f64| -theta.sin() * (2.0 * poly.a2.hi * theta.cos() + poly.a1.hi);
    let mut width = h;
    let mut bracket = None;
    for _ in 0..8 {
        let (lo, hi) = (theta_hat - width, theta_hat + width);
        if slope(lo) * slope(hi) <= 0.0 {
            bracket = Some((lo, hi));
            break;
        }
        width *= 2.0;
    }
    let Some((mut lo, mut hi)) = bracket else {
        return (theta_hat, value);
    };
    let slope_lo_positive = slope(lo) > 0.0;
    for _ in 0..120 {
        if hi - lo <= 1e-14 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if (slope(mid) > 0.0) == slope_lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta_polished = 0.5 * (lo + hi);
    let polished = poly.eval_at_theta(theta_polished);
    if polished <= value {
        (theta_polished, polished)
    } else {
        (theta_hat, value)
    }
}

/// Golden-section minimization of the compensated `|s|^2` over `[lo, hi]`,
/// shrinking the bracket to `width_tol`. Returns the best probe seen.
fn golden_section_min(poly: &MagSqrPoly, lo: f64, hi: f64, width_tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (lo, hi);
    let mut x1 = hi - (hi - lo) * INV_PHI;
    let mut x2 = lo + (hi - lo) * INV_PHI;
    let mut f1 = poly.eval_at_theta(x1);
    let mut f2 = poly.eval_at_theta(x2);
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    while hi - lo > width_tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - (hi - lo) * INV_PHI;
            f1 = poly.eval_at_theta(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + (hi - lo) * INV_PHI;
            f2 = poly.eval_at_theta(x2);
        }
        let (x, f) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
        if f < best.1 {
            best = (x, f);
        }
    }
    (best.0, best.1)
}

/// Purity `Tr(rho_A^2)` of the reduced state of the first qubit, in
/// `[1/2, 1]`.
pub fn reduced_purity(state: &PureState2Q) -> f64 {
    let c = state.amplitudes();
    // rho_A[a][a'] = sum_b c_{ab} conj(c_{a'b}) with c_{ab} = c[2a + b].
    let r00 = c[0].norm_sqr() + c[1].norm_sqr();
    let r11 = c[2].norm_sqr() + c[3].norm_sqr();
    let r01 = c[0] * c[2].conj() + c[1] * c[3].conj();
    r00 * r00 + r11 * r11 + 2.0 * r01.norm_sqr()
}

/// Concurrence computed through the reduced-state purity,
/// `sqrt(2 (1 - Tr(rho_A^2)))`, clamped to `[0, 1]` against rounding. An
/// independent check of the determinant-based formula in the state module.
pub fn oracle_concurrence(state: &PureState2Q) -> f64 {
    (2.0 * (1.0 - reduced_purity(state)))
        .max(0.0)
        .sqrt()
        .min(1.0)
}
