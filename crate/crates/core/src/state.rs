use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Allowed deviation of the squared norm from 1 when a caller supplies
/// amplitudes with `normalize = false`.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// A normalized pure state of two qubits.
///
/// Amplitudes are stored over the product basis in the fixed order
/// `(|00>, |01>, |10>, |11>)`, i.e. `c[2a + b]` is the amplitude of
/// `|a>|b>` with `a` labelling the first qubit. The squared moduli always
/// sum to 1 within [`NORM_TOLERANCE`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState2Q {
    c: [Complex64; 4],
}

impl PureState2Q {
    /// Builds a state from four complex amplitudes.
    ///
    /// With `normalize = true` the amplitudes are rescaled to unit norm;
    /// a numerically zero vector is rejected with [`Error::ZeroVector`].
    /// With `normalize = false` the amplitudes are taken as-is and must
    /// already be unit-norm within [`NORM_TOLERANCE`]. Non-finite entries
    /// are rejected in both modes.
    pub fn new(c: [Complex64; 4], normalize: bool) -> Result<Self> {
        if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                context: "state amplitudes",
            });
        }
        let norm_sqr: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        if normalize {
            if norm_sqr <= f64::MIN_POSITIVE {
                return Err(Error::ZeroVector { norm_sqr });
            }
            let scale = norm_sqr.sqrt().recip();
            Ok(Self {
                c: c.map(|z| z * scale),
            })
        } else {
            let deviation = (norm_sqr - 1.0).abs();
            if deviation > NORM_TOLERANCE {
                return Err(Error::NotNormalized {
                    deviation,
                    tolerance: NORM_TOLERANCE,
                });
            }
            Ok(Self { c })
        }
    }

    /// Builds a state from four real amplitudes. Convenience wrapper over
    /// [`PureState2Q::new`].
    pub fn from_real(c: [f64; 4], normalize: bool) -> Result<Self> {
        Self::new(c.map(|re| Complex64::new(re, 0.0)), normalize)
    }

    /// Constructs without re-checking the norm. Callers must guarantee the
    /// amplitudes are unit-norm within [`NORM_TOLERANCE`].
    pub(crate) fn from_amplitudes_unchecked(c: [Complex64; 4]) -> Self {
        debug_assert!(
            (c.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() <= NORM_TOLERANCE,
            "unchecked construction with non-normalized amplitudes"
        );
        Self { c }
    }

    /// The computational basis state with index `k` (0 => |00>, 1 => |01>,
    /// 2 => |10>, 3 => |11>).
    pub fn basis(k: usize) -> Self {
        assert!(k < 4, "basis index out of range");
        let mut c = [Complex64::new(0.0, 0.0); 4];
        c[k] = Complex64::new(1.0, 0.0);
        Self { c }
    }

    /// The maximally entangled state `(|00> + |11>)/sqrt(2)`.
    pub fn bell_phi_plus() -> Self {
        let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            c: [a, zero, zero, a],
        }
    }

    /// The amplitudes in basis order `(|00>, |01>, |10>, |11>)`.
    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.c
    }

    /// Squared moduli `|c_k|^2` in basis order. These sum to 1 within
    /// [`NORM_TOLERANCE`].
    pub fn probabilities(&self) -> [f64; 4] {
        self.c.map(|z| z.norm_sqr())
    }

    /// Sum of squared moduli (1 within [`NORM_TOLERANCE`]).
    pub fn norm_sqr(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    pub fn overlap(&self, other: &Self) -> Complex64 {
        self.c
            .iter()
            .zip(other.c.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Concurrence `C = 2 |c0 c3 - c1 c2|`.
    ///
    /// Zero for product states, one for maximally entangled states. The
    /// returned value lies in `[0, 1 + 1e-12]`; rounding can push it a few
    /// ulp above 1 for maximally entangled inputs.
    pub fn concurrence(&self) -> EntanglementValue {
        let det = self.c[0] * self.c[3] - self.c[1] * self.c[2];
        EntanglementValue::new(2.0 * det.norm())
    }

    /// Whether the state is symmetric under exchange of the two qubits,
    /// i.e. `|c1 - c2| <= tol`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.c[1] - self.c[2]).norm() <= tol
    }
}

/// A concurrence value. Guaranteed to lie in `[0, 1 + 1e-12]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct EntanglementValue(f64);

impl EntanglementValue {
    fn new(value: f64) -> Self {
        debug_assert!(
            (0.0..=1.0 + 1e-12).contains(&value),
            "concurrence {value} outside [0, 1 + 1e-12]"
        );
        Self(value)
    }

    /// The raw concurrence (may exceed 1 by a few ulp).
    pub fn value(self) -> f64 {
        self.0
    }

    /// The concurrence clamped to `[0, 1]`, suitable for formulas whose
    /// domain is exactly the unit interval.
    pub fn clamped(self) -> f64 {
        self.0.clamp(0.0, 1.0)
    }
}

/// The one-parameter family `(|00> + sqrt(x)|01> + sqrt(1-x)|10>)/sqrt(2)`
/// for `x` in `[0, 1]`.
///
/// Every member has `c3 = 0` and `|c0|^2 = 1/2`, so it reaches an orthogonal
/// state in exactly the linear-case crossing time, and its concurrence is
/// `sqrt(x(1-x))`. At `x = 1/2` the state is exchange-symmetric.
pub fn family_state(x: f64) -> Result<PureState2Q> {
    if !x.is_finite() {
        return Err(Error::NonFinite { context: "x" });
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            min: 0.0,
            max: 1.0,
        });
    }
    let c = [
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        Complex64::new((x / 2.0).sqrt(), 0.0),
        Complex64::new(((1.0 - x) / 2.0).sqrt(), 0.0),
        Complex64::new(0.0, 0.0),
    ];
    Ok(PureState2Q::from_amplitudes_unchecked(c))
}

/// Draws a Haar-random two-qubit pure state.
///
/// Eight independent standard normals are drawn in basis order, real part
/// before imaginary part, and the resulting vector is normalized. The
/// output is a deterministic function of the RNG stream.
pub fn haar_sample<R: Rng + ?Sized>(rng: &mut R) -> PureState2Q {
    loop {
        let mut c = [Complex64::new(0.0, 0.0); 4];
        for z in &mut c {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *z = Complex64::new(re, im);
        }
        let norm_sqr: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        // An all-zero draw has probability zero; resample rather than panic.
        if norm_sqr > f64::MIN_POSITIVE {
            let scale = norm_sqr.sqrt().recip();
            return PureState2Q::from_amplitudes_unchecked(c.map(|z| z * scale));
        }
    }
}

/// Draws a random state from the quadratic (|c3| > 0) class that reaches an
/// orthogonal state: `|c0|^2 = |c3|^2` with `|c0|^2` uniform in `[1/4, 1/2]`,
/// the remaining weight split uniformly between `c1` and `c2`, and all four
/// phases uniform.
pub fn sample_generic_reachable<R: Rng + ?Sized>(rng: &mut R) -> PureState2Q {
    let p0: f64 = rng.gen_range(0.25..=0.5);
    let split: f64 = rng.gen();
    let rest = (1.0 - 2.0 * p0).max(0.0);
    let p = [p0, rest * split, rest * (1.0 - split), p0];
    from_weights_with_random_phases(rng, p)
}

/// Draws a random state from the linear (c3 = 0) class that reaches an
/// orthogonal state: `|c0|^2 = 1/2`, the remaining weight split uniformly
/// between `c1` and `c2`, and the three occupied phases uniform.
pub fn sample_singular_reachable<R: Rng + ?Sized>(rng: &mut R) -> PureState2Q {
    let split: f64 = rng.gen();
    let p = [0.5, 0.5 * split, 0.5 * (1.0 - split), 0.0];
    from_weights_with_random_phases(rng, p)
}

/// Builds a state with the given basis weights and uniform random phases on
/// every strictly positive weight (zero weights keep a zero amplitude so the
/// class of the state is exact).
fn from_weights_with_random_phases<R: Rng + ?Sized>(rng: &mut R, p: [f64; 4]) -> PureState2Q {
    let c = p.map(|w| {
        if w > 0.0 {
            let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(w.sqrt(), phase)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    PureState2Q::from_amplitudes_unchecked(c)
}

/// Wire format for a state: four `[re, im]` pairs in basis order plus a
/// `normalize` flag with the same meaning as in [`PureState2Q::new`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub c: [[f64; 2]; 4],
    pub normalize: bool,
}

impl StateJson {
    /// Validates and converts into a [`PureState2Q`].
    pub fn to_state(&self) -> Result<PureState2Q> {
        PureState2Q::new(
            self.c.map(|[re, im]| Complex64::new(re, im)),
            self.normalize,
        )
    }

    /// Snapshot of an already-normalized state.
    pub fn from_state(state: &PureState2Q) -> Self {
        Self {
            c: state.amplitudes().map(|z| [z.re, z.im]),
            normalize: false,
        }
    }
}
