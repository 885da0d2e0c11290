use std::path::Path;

use orthotime::{family_state, speed_report, Error, HamiltonianSpec};

use crate::error::{write_file, CliError, Result};

/// Column names of the sweep CSV. This header is the stable output
/// contract; consumers key on it byte-for-byte.
pub const CSV_HEADER: &str = "x,concurrence,tau,t_ml,t_mt,t_min,bound_rhs,ratio,violates_eq5";

/// One sweep sample of the family `(|00> + sqrt(x)|01> + sqrt(1-x)|10>)
/// / sqrt(2)`. Every member is reachable, so all fields are plain numbers.
/// The boolean is serialized under the `violates_eq5` CSV column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub concurrence: f64,
    pub tau: f64,
    pub t_ml: f64,
    pub t_mt: f64,
    pub t_min: f64,
    pub bound_rhs: f64,
    pub ratio: f64,
    pub violates: bool,
}

impl SweepRow {
    /// Analyzes one family member.
    pub fn compute(x: f64, ham: &HamiltonianSpec, tol: f64) -> Result<Self> {
        let state = family_state(x)?;
        let report = speed_report(&state, ham, tol);
        // Family states always carry weight 1/2 on the single-excitation
        // levels, so every report field below is present.
        let absent = || CliError::Format {
            context: format!("family state at x = {x} produced an incomplete report"),
        };
        Ok(Self {
            x,
            concurrence: report.concurrence,
            tau: report.tau.ok_or_else(absent)?,
            t_ml: report.qsl.t_ml.ok_or_else(absent)?,
            t_mt: report.qsl.t_mt.ok_or_else(absent)?,
            t_min: report.qsl.t_min.ok_or_else(absent)?,
            bound_rhs: report.bound_rhs,
            ratio: report.ratio.ok_or_else(absent)?,
            violates: report.violates_bound,
        })
    }

    /// Renders the CSV line. Floats use shortest round-trip form, so
    /// parsing recovers them bit-for-bit.
    fn to_csv_line(self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.x,
            self.concurrence,
            self.tau,
            self.t_ml,
            self.t_mt,
            self.t_min,
            self.bound_rhs,
            self.ratio,
            self.violates
        )
    }

    fn from_csv_line(line: &str, number: usize) -> Result<Self> {
        let bad = |what: &str| CliError::Format {
            context: format!("CSV line {number}: {what}: {line:?}"),
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(bad("expected 9 fields"));
        }
        let mut numbers = [0.0f64; 8];
        for (slot, text) in numbers.iter_mut().zip(&fields[..8]) {
            *slot = text.parse().map_err(|_| bad("not a number"))?;
        }
        let violates = fields[8].parse().map_err(|_| bad("not a boolean"))?;
        let [x, concurrence, tau, t_ml, t_mt, t_min, bound_rhs, ratio] = numbers;
        Ok(Self {
            x,
            concurrence,
            tau,
            t_ml,
            t_mt,
            t_min,
            bound_rhs,
            ratio,
            violates,
        })
    }
}

fn validate_range(from: f64, to: f64, steps: usize) -> Result<()> {
    for (name, value) in [("from", from), ("to", to)] {
        if !value.is_finite() {
            return Err(Error::NonFinite { context: name }.into());
        }
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain {
                name,
                value,
                min: 0.0,
                max: 1.0,
            }
            .into());
        }
    }
    if from >= to {
        return Err(Error::Domain {
            name: "from",
            value: from,
            min: 0.0,
            max: to,
        }
        .into());
    }
    if steps < 2 {
        return Err(Error::Domain {
            name: "steps",
            value: steps as f64,
            min: 2.0,
            max: f64::INFINITY,
        }
        .into());
    }
    Ok(())
}

/// Analyzes `steps` family members with `x` evenly spaced on `[from, to]`.
pub fn run(
    from: f64,
    to: f64,
    steps: usize,
    ham: &HamiltonianSpec,
    tol: f64,
) -> Result<Vec<SweepRow>> {
    validate_range(from, to, steps)?;
    (0..steps)
        .map(|i| {
            let x = from + (to - from) * (i as f64) / ((steps - 1) as f64);
            SweepRow::compute(x, ham, tol)
        })
        .collect()
}

/// Renders rows as a CSV document (header plus one line per row).
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

/// Parses a document produced by [`to_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        other => {
            return Err(CliError::Format {
                context: format!("bad CSV header: {:?}", other.map(|(_, h)| h)),
            })
        }
    }
    lines
        .map(|(index, line)| SweepRow::from_csv_line(line, index + 1))
        .collect()
}

/// Runs the sweep and writes the CSV file.
pub fn run_to_file(
    from: f64,
    to: f64,
    steps: usize,
    out: &Path,
    ham: &HamiltonianSpec,
    tol: f64,
) -> Result<usize> {
    let rows = run(from, to, steps, ham, tol)?;
    write_file(out, &to_csv(&rows))?;
    Ok(rows.len())
}
