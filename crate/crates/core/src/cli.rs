//! Command-line front end. `main` only forwards `std::env::args` here.
//!
//! Exit codes: 0 analysis completed, 2 parse or usage error, 3 numeric
//! failure, 4 a demo claim failed.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::demo::run_demo;
use crate::discretize::{check_ep_preservation_with, check_pr_discretization};
use crate::error::Error;
use crate::extpos::{check_external_positivity_with, EpOptions};
use crate::input::InputSpec;
use crate::parse::{parse_coeff_list, parse_tf_text};
use crate::posreal::is_positive_real;
use crate::quadrant::quadrant;
use crate::realize::StateSpace;
use crate::report::{analyze, AnalyzeOptions, EnergyOptions};
use crate::tol;
use crate::xfer::TransferFunction;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_CLAIM: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "positivity",
    version,
    about = "Positive realness and external positivity of SISO transfer functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Transfer function text, e.g. "(2s+1)/(s+1)"
    #[arg(long, conflicts_with_all = ["num", "den"])]
    tf: Option<String>,
    /// Numerator coefficients, descending powers
    #[arg(long, allow_hyphen_values = true, requires = "den")]
    num: Option<String>,
    /// Denominator coefficients, descending powers
    #[arg(long, allow_hyphen_values = true, requires = "num")]
    den: Option<String>,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Negativity tolerance for external positivity decisions
    #[arg(long, default_value_t = tol::EP_TOL)]
    tol: f64,
    /// Sampling horizon override in seconds
    #[arg(long)]
    horizon: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: positive realness, external positivity, decomposition, inverse
    Check {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Input for the running energy integral (step, pulse:t0,t1,amp, ramp:k, file:path)
        #[arg(long)]
        energy: Option<String>,
        /// Energy integration end time
        #[arg(long, default_value_t = 10.0)]
        until: f64,
    },
    /// Direct gain and strictly proper part
    Decompose {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Inverse system and its verdicts
    Invert {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Zero-order-hold discretization and Markov parameters
    Discretize {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        dt: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
    /// Simulate the response to a nonnegative input
    Simulate {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        input: String,
        #[arg(long)]
        until: f64,
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Reproduce the counterexamples separating the two notions
    Demo {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Random systems sorted into the positive-real by external-positivity table
    Quadrant {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            code: exit_code(e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidInput(_)
        | Error::DegenerateInput(_)
        | Error::ImproperInput(_) => EXIT_USAGE,
        Error::PoleOnAxis(_) | Error::GridMismatch | Error::NoWitnessExists | Error::Numeric(_) => {
            EXIT_NUMERIC
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome::error(&e),
    }
}

fn system(args: &SystemArgs) -> crate::Result<TransferFunction> {
    match (&args.tf, &args.num, &args.den) {
        (Some(text), _, _) => parse_tf_text(text),
        (None, Some(num), Some(den)) => {
            let num = parse_coeff_list(num)?;
            let den = parse_coeff_list(den)?;
            TransferFunction::from_coeffs(&num, &den)
        }
        _ => Err(Error::InvalidInput(
            "give the system with --tf or with --num and --den".into(),
        )),
    }
}

fn ep_options(common: &CommonArgs) -> crate::Result<EpOptions> {
    if !(common.tol >= 0.0 && common.tol.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "--tol must be nonnegative, got {}",
            common.tol
        )));
    }
    if let Some(h) = common.horizon {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "--horizon must be positive, got {h}"
            )));
        }
    }
    Ok(EpOptions {
        ep_tol: common.tol,
        horizon: common.horizon,
    })
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn dispatch(command: Command) -> crate::Result<Outcome> {
    match command {
        Command::Check {
            system: s,
            common,
            energy,
            until,
        } => {
            let f = system(&s)?;
            let energy = match energy {
                Some(text) => Some(EnergyOptions {
                    input: InputSpec::parse(&text)?,
                    until,
                    dt: None,
                }),
                None => None,
            };
            let opts = AnalyzeOptions {
                ep: ep_options(&common)?,
                energy,
            };
            let report = analyze(&f, &opts);
            let mut out = if common.json {
                report.to_json()
            } else {
                report.to_text()
            };
            if common.json {
                out.push('\n');
            }
            Ok(Outcome::ok(out))
        }
        Command::Decompose { system: s, common } => {
            let f = system(&s)?;
            let dec = f.decompose_biproper()?;
            Ok(Outcome::ok(if common.json {
                pretty(&json!({
                    "d": dec.d,
                    "f0": {"num": dec.f0.num().coeffs(), "den": dec.f0.den().coeffs()},
                }))
            } else {
                format!("d = {}\nf0 = {}\n", dec.d, dec.f0)
            }))
        }
        Command::Invert { system: s, common } => {
            let opts = ep_options(&common)?;
            let f = system(&s)?;
            let inv = f.inverse()?;
            let proper = inv.is_proper();
            let pr = is_positive_real(&inv).verdict;
            let ep = if proper {
                Some(check_external_positivity_with(&inv, &opts)?.status.as_str())
            } else {
                None
            };
            Ok(Outcome::ok(if common.json {
                pretty(&json!({
                    "num": inv.num().coeffs(),
                    "den": inv.den().coeffs(),
                    "proper": proper,
                    "pr": pr,
                    "ep": ep,
                }))
            } else {
                format!(
                    "inverse = {inv}\nproper: {proper}\npositive real: {pr}\nexternally positive: {}\n",
                    ep.unwrap_or("n/a (improper, no state-space realization)")
                )
            }))
        }
        Command::Discretize {
            system: s,
            common,
            dt,
            steps,
        } => {
            let opts = ep_options(&common)?;
            let f = system(&s)?;
            let ep = check_ep_preservation_with(&f, dt, steps, &opts)?;
            let pr = check_pr_discretization(&f, dt)?;
            Ok(Outcome::ok(if common.json {
                pretty(&json!({
                    "h": dt,
                    "markov": ep.markov,
                    "min_markov": ep.min_value,
                    "ep_preserved": ep.preserved,
                    "continuous_ep": ep.continuous_status.as_str(),
                    "discrete": {
                        "num": pr.discrete_tf.num().coeffs(),
                        "den": pr.discrete_tf.den().coeffs(),
                        "relative_degree": pr.discrete_relative_degree,
                    },
                    "continuous_pr": pr.continuous.verdict,
                    "discrete_pr": pr.discrete.verdict,
                    "discrete_pr_failing": pr.discrete.failing(),
                }))
            } else {
                let mut out = String::new();
                let _ = writeln!(out, "h = {dt}");
                let _ = writeln!(out, "discrete G(z) = {}", pr.discrete_tf.format_with("z"));
                for (k, g) in ep.markov.iter().enumerate() {
                    let _ = writeln!(out, "g{k} = {g}");
                }
                let _ = writeln!(
                    out,
                    "external positivity ({}): min g = {} -> {}",
                    ep.continuous_status,
                    ep.min_value,
                    if ep.preserved {
                        "preserved"
                    } else {
                        "not preserved"
                    }
                );
                let _ = writeln!(
                    out,
                    "positive realness: continuous {}, discrete {} (failing {:?})",
                    pr.continuous.verdict,
                    pr.discrete.verdict,
                    pr.discrete.failing()
                );
                out
            }))
        }
        Command::Simulate {
            system: s,
            common,
            input,
            until,
            dt,
        } => {
            let f = system(&s)?;
            let ss = StateSpace::from_tf(&f)?;
            let dt = dt.unwrap_or_else(|| ss.default_step());
            let u = InputSpec::parse(&input)?.to_signal(until, dt)?;
            let y = ss.simulate(&u);
            let j = ss.energy(&u);
            Ok(Outcome::ok(if common.json {
                pretty(&json!({
                    "step": u.step(),
                    "u": u.values(),
                    "y": y.values(),
                    "energy": j.values(),
                    "min_output": y.min(),
                    "min_energy": j.min(),
                }))
            } else {
                let mut out = String::from("t,u,y,J\n");
                for k in 0..u.len() {
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        u.time(k),
                        u.values()[k],
                        y.values()[k],
                        j.values()[k]
                    );
                }
                out
            }))
        }
        Command::Demo { common } => {
            let report = run_demo(&ep_options(&common)?);
            let stdout = if common.json {
                let mut s = report.to_json();
                s.push('\n');
                s
            } else {
                report.to_text()
            };
            Ok(if report.passed {
                Outcome::ok(stdout)
            } else {
                Outcome {
                    code: EXIT_CLAIM,
                    stdout,
                    stderr: format!("failed claims: {}\n", report.failing().join(", ")),
                }
            })
        }
        Command::Quadrant {
            common,
            count,
            seed,
        } => {
            let report = quadrant(count, seed, &ep_options(&common)?);
            Ok(Outcome::ok(if common.json {
                let mut s = report.to_json();
                s.push('\n');
                s
            } else {
                report.to_text()
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Outcome {
        run(std::iter::once("positivity").chain(args.iter().copied()))
    }

    #[test]
    fn check_accepts_both_system_forms() {
        let a = cli(&["check", "--tf", "(2s+1)/(s+1)", "--json"]);
        let b = cli(&["check", "--num", "2,1", "--den", "1,1", "--json"]);
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
    }

    #[test]
    fn negative_coefficients_parse() {
        let o = cli(&["decompose", "--num", "-1,0", "--den", "1,-1"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.starts_with("d = -1"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(cli(&["check", "--tf", "K/(s+a)"]).code, EXIT_USAGE);
        assert_eq!(cli(&["check"]).code, EXIT_USAGE);
        assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(cli(&["decompose", "--tf", "s^2"]).code, EXIT_USAGE);
        assert_eq!(
            cli(&[
                "simulate",
                "--tf",
                "1/(s+1)",
                "--input",
                "pulse:0,1,-1",
                "--until",
                "1"
            ])
            .code,
            EXIT_USAGE
        );
        assert_eq!(cli(&["demo", "--tol", "1"]).code, EXIT_CLAIM);
        assert_eq!(cli(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn simulate_csv() {
        let o = cli(&[
            "simulate", "--tf", "1/(s+1)", "--input", "step", "--until", "1", "--dt", "0.5",
        ]);
        assert_eq!(o.code, 0);
        let lines: Vec<&str> = o.stdout.lines().collect();
        assert_eq!(lines[0], "t,u,y,J");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn invert_reports_improper() {
        let o = cli(&["invert", "--tf", "1/(s+1)", "--json"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["proper"], false);
        assert!(v["ep"].is_null());
    }
}
