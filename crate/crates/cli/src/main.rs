use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orthotime::HamiltonianSpec;
use orthotime_cli::{analyze, haar, sweep, verify, CliError};

/// Orthogonalization-time analysis for two-qubit states under the local
/// number Hamiltonian.
#[derive(Parser)]
#[command(name = "orthotime", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct HamArgs {
    /// Single-qubit level spacing (energy units).
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    /// Reduced Planck constant (sets the time unit).
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

impl HamArgs {
    fn to_spec(&self) -> Result<HamiltonianSpec, CliError> {
        Ok(HamiltonianSpec::new(self.epsilon, self.hbar)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one state file: classification, first orthogonality time,
    /// speed-limit times, concurrence, and the entanglement bound.
    Analyze {
        /// Path to a state JSON file: {"c": [[re, im], ...x4], "normalize": bool}.
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        ham: HamArgs,
        /// Tolerance for the reachability classification.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Analyze the one-excitation family (|00> + sqrt(x)|01> + sqrt(1-x)|10>)/sqrt(2)
    /// over a range of x and write one CSV row per sample.
    Sweep {
        /// Start of the x range (inclusive).
        #[arg(long)]
        from: f64,
        /// End of the x range (inclusive).
        #[arg(long)]
        to: f64,
        /// Number of evenly spaced samples (at least 2).
        #[arg(long)]
        steps: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        ham: HamArgs,
        /// Tolerance for the reachability classification.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Sample Haar-random states and measure how often the exact
    /// reachability conditions are hit.
    Haar {
        /// Number of samples.
        #[arg(long)]
        n: u64,
        /// Master seed; sample i draws from stream i.
        #[arg(long)]
        seed: u64,
        /// Tolerance at which the exact conditions are counted as hit.
        #[arg(long, default_value_t = haar::DEFAULT_TOL)]
        tol: f64,
        /// Threshold on |c3|^2 below which a sample counts as near-singular.
        #[arg(long = "c3-small", default_value_t = haar::DEFAULT_C3_SMALL)]
        c3_small: f64,
        /// Output JSON path for the summary.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the closed forms against the numeric oracle on constructed
    /// reachable states of both classes.
    Verify {
        /// Number of quadratic-case states to construct.
        #[arg(long = "n-generic", default_value_t = 500)]
        n_generic: usize,
        /// Number of linear-case states to construct.
        #[arg(long = "n-singular", default_value_t = 500)]
        n_singular: usize,
        /// Master seed for the constructed states.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Self-test: corrupt the quadratic closed form and confirm the
        /// oracle comparison catches it.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze {
            state,
            ham,
            tol,
            json,
        } => {
            let ham = ham.to_spec()?;
            let report = analyze::run(&state, &ham, tol)?;
            if json {
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                println!("{text}");
            } else {
                print!("{}", analyze::render_human(&report));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            from,
            to,
            steps,
            out,
            ham,
            tol,
        } => {
            let ham = ham.to_spec()?;
            let rows = sweep::run_to_file(from, to, steps, &out, &ham, tol)?;
            println!("wrote {rows} rows to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Haar {
            n,
            seed,
            tol,
            c3_small,
            out,
        } => {
            let summary = haar::run_to_file(n, seed, tol, c3_small, &out)?;
            println!(
                "sampled {} states (seed {}): frac_generic_reachable = {}, \
                 frac_singular_reachable = {}, frac_c3_small = {}",
                summary.n,
                summary.seed,
                summary.frac_generic_reachable,
                summary.frac_singular_reachable,
                summary.frac_c3_small
            );
            println!("summary written to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            n_generic,
            n_singular,
            seed,
            inject_fault,
        } => {
            if n_generic == 0 {
                return Err(orthotime::Error::Domain {
                    name: "n-generic",
                    value: 0.0,
                    min: 1.0,
                    max: f64::INFINITY,
                }
                .into());
            }
            if n_singular == 0 {
                return Err(orthotime::Error::Domain {
                    name: "n-singular",
                    value: 0.0,
                    min: 1.0,
                    max: f64::INFINITY,
                }
                .into());
            }
            let outcome = verify::run(&verify::VerifyConfig {
                n_generic,
                n_singular,
                seed,
                inject_fault,
            });
            print!("{}", verify::render_summary(&outcome));
            if outcome.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprint!("{}", verify::render_failures(&outcome));
                Ok(ExitCode::from(1))
            }
        }
    }
}
