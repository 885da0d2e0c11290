use std::fmt::Write as _;
use std::path::Path;

use orthotime::{speed_report, HamiltonianSpec, PureState2Q, SpeedReport, StateJson};

use crate::error::{read_file, CliError, Result};

/// Reads a state description (JSON `{"c": [[re, im]; 4], "normalize": bool}`)
/// and builds the validated state.
pub fn load_state(path: &Path) -> Result<PureState2Q> {
    let text = read_file(path)?;
    let json: StateJson = serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(json.to_state()?)
}

/// Full analysis of the state stored at `path`.
pub fn run(path: &Path, ham: &HamiltonianSpec, tol: f64) -> Result<SpeedReport> {
    let state = load_state(path)?;
    Ok(speed_report(&state, ham, tol))
}

fn fmt_opt(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v}"),
        None => "undefined".to_string(),
    }
}

/// Plain-text rendering of a [`SpeedReport`].
pub fn render_human(report: &SpeedReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "classification:     {} (condition residual {:.3e})",
        report.ortho.kind, report.ortho.condition_residual
    )
    .unwrap();
    if let Some(tau) = report.tau {
        writeln!(out, "orthogonality time: tau = {tau}").unwrap();
    } else {
        writeln!(
            out,
            "orthogonality time: never reached (the survival amplitude stays nonzero)"
        )
        .unwrap();
    }
    writeln!(out, "t_ml  (mean energy): {}", fmt_opt(report.qsl.t_ml)).unwrap();
    writeln!(out, "t_mt  (energy spread): {}", fmt_opt(report.qsl.t_mt)).unwrap();
    writeln!(out, "t_min (combined):   {}", fmt_opt(report.qsl.t_min)).unwrap();
    writeln!(out, "t_min1 (balanced):  {}", fmt_opt(report.qsl.t_min1)).unwrap();
    if report.t_min_conflict {
        writeln!(
            out,
            "note: t_min and t_min1 disagree; the combined rule and the balanced closed form"
        )
        .unwrap();
        writeln!(out, "      coincide only at maximal entanglement").unwrap();
    }
    writeln!(out, "concurrence:        {}", report.concurrence).unwrap();
    writeln!(out, "bound rhs:          {}", report.bound_rhs).unwrap();
    match (report.ratio, report.denominator_used) {
        (Some(ratio), Some(denominator)) => {
            writeln!(out, "ratio tau / {denominator}: {ratio}").unwrap();
            writeln!(
                out,
                "violates bound:     {}",
                if report.violates_bound { "yes" } else { "no" }
            )
            .unwrap();
        }
        _ => {
            writeln!(out, "ratio:              undefined (no orthogonality time)").unwrap();
        }
    }
    out
}
