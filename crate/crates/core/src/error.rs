use thiserror::Error;

/// Errors produced by state construction, domain-checked math, and the
/// numeric oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Every amplitude is numerically zero, so there is no direction to
    /// normalize.
    #[error("state vector is numerically zero (squared norm = {norm_sqr:.3e})")]
    ZeroVector { norm_sqr: f64 },

    /// The caller asked for the amplitudes to be taken as-is, but they are
    /// not unit-norm.
    #[error(
        "state is not normalized: |sum of squared moduli - 1| = {deviation:.3e} \
         exceeds the allowed {tolerance:.3e}"
    )]
    NotNormalized { deviation: f64, tolerance: f64 },

    /// An amplitude or parameter is NaN or infinite.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// A real parameter lies outside its documented range.
    #[error("{name} = {value} is outside [{min}, {max}]")]
    Domain {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// The oracle's scan grid is too coarse to bracket roots reliably.
    #[error("grid_points = {got} is below the supported minimum of {min}")]
    InvalidGrid { got: usize, min: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
