use std::path::Path;

use orthotime::{classify, haar_sample, Error, OrthoKind};
use serde::{Deserialize, Serialize};

use crate::error::{write_file, Result};
use crate::streams::sample_stream;

/// Default tolerance at which the exact reachability conditions are tested
/// on Haar samples. Both condition sets have Haar measure zero, so even a
/// loose 1e-9 sees essentially no hits.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default threshold on `|c3|^2` below which a sample counts as
/// "nearly singular".
pub const DEFAULT_C3_SMALL: f64 = 1e-3;

/// Aggregated classification statistics over Haar-random states.
///
/// `|c3|^2` of a Haar state is Beta(1,3)-distributed, so
/// `frac_c3_small ~ 1 - (1 - c3_small)^3` (0.002997 at the default
/// threshold): states merely *near* the singular class are common, while
/// the exact conditions are never hit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HaarSummary {
    pub n: u64,
    pub seed: u64,
    pub tol: f64,
    /// Fraction of samples with `|c3|^2` below the chosen threshold.
    pub frac_c3_small: f64,
    /// Fraction classified quadratic-case reachable at `tol`.
    pub frac_generic_reachable: f64,
    /// Fraction classified linear-case reachable at `tol`.
    pub frac_singular_reachable: f64,
    /// Smallest `|c3|` seen across all samples.
    pub min_abs_c3: f64,
}

/// Samples `n >= 1` Haar states (stream `i` of the master seed drives
/// sample `i`) and classifies each at tolerance `tol`.
pub fn run(n: u64, seed: u64, tol: f64, c3_small: f64) -> Result<HaarSummary> {
    if n < 1 {
        return Err(Error::Domain {
            name: "n",
            value: n as f64,
            min: 1.0,
            max: f64::INFINITY,
        }
        .into());
    }
    for (name, value) in [("tol", tol), ("c3-small", c3_small)] {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::Domain {
                name,
                value,
                min: f64::MIN_POSITIVE,
                max: f64::INFINITY,
            }
            .into());
        }
    }

    let mut count_c3_small = 0u64;
    let mut count_generic_reachable = 0u64;
    let mut count_singular_reachable = 0u64;
    let mut min_abs_c3 = f64::INFINITY;
    for i in 0..n {
        let state = haar_sample(&mut sample_stream(seed, i));
        let p3 = state.probabilities()[3];
        if p3 < c3_small {
            count_c3_small += 1;
        }
        min_abs_c3 = min_abs_c3.min(p3.sqrt());
        let class = classify(&state, tol);
        match (class.kind, class.reachable) {
            (OrthoKind::Generic, true) => count_generic_reachable += 1,
            (OrthoKind::SingularLinear, true) => count_singular_reachable += 1,
            _ => {}
        }
    }

    Ok(HaarSummary {
        n,
        seed,
        tol,
        frac_c3_small: count_c3_small as f64 / n as f64,
        frac_generic_reachable: count_generic_reachable as f64 / n as f64,
        frac_singular_reachable: count_singular_reachable as f64 / n as f64,
        min_abs_c3,
    })
}

/// Runs the Monte Carlo and writes the summary as pretty JSON.
pub fn run_to_file(n: u64, seed: u64, tol: f64, c3_small: f64, out: &Path) -> Result<HaarSummary> {
    let summary = run(n, seed, tol, c3_small)?;
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    write_file(out, &text)?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_sample_summary_is_degenerate() {
        let s = run(1, 123, DEFAULT_TOL, DEFAULT_C3_SMALL).unwrap();
        assert_eq!(s.n, 1);
        for frac in [
            s.frac_c3_small,
            s.frac_generic_reachable,
            s.frac_singular_reachable,
        ] {
            assert!(frac == 0.0 || frac == 1.0);
        }
        assert!(s.min_abs_c3.is_finite());
    }

    #[test]
    fn summaries_are_deterministic_per_seed() {
        let a = run(500, 42, DEFAULT_TOL, DEFAULT_C3_SMALL).unwrap();
        let b = run(500, 42, DEFAULT_TOL, DEFAULT_C3_SMALL).unwrap();
        assert_eq!(a, b);
        let c = run(500, 43, DEFAULT_TOL, DEFAULT_C3_SMALL).unwrap();
        assert_ne!(a.min_abs_c3, c.min_abs_c3);
    }

    #[test]
    fn zero_samples_are_rejected() {
        assert!(run(0, 1, DEFAULT_TOL, DEFAULT_C3_SMALL).is_err());
    }

    #[test]
    fn summary_keys_appear_in_contract_order() {
        let s = run(2, 7, DEFAULT_TOL, DEFAULT_C3_SMALL).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let expected = [
            "\"n\"",
            "\"seed\"",
            "\"tol\"",
            "\"frac_c3_small\"",
            "\"frac_generic_reachable\"",
            "\"frac_singular_reachable\"",
            "\"min_abs_c3\"",
        ];
        let mut last = 0;
        for key in expected {
            let at = text.find(key).expect(key);
            assert!(at >= last, "{key} out of order in {text}");
            last = at;
        }
    }
}
