use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bergman_rigidity::cli::{compute, run_suite, CliError, Options};
use bergman_rigidity::maps::ZOO_NAMES;

/// Verification suites and single computations for proper maps between balls.
#[derive(Parser)]
#[command(name = "bergman-rigidity", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a suite: kernel-selftest, lemma2-2, lemma2-3, prop2-5, prop2-6, appendix-grauert or all.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
        /// Include per-check runtimes (breaks byte-identical output).
        #[arg(long)]
        timings: bool,
    },
    /// One computation: phi, X, P-coeffs, normal-form, X-origin, minimal-K or metric.
    Compute {
        what: String,
        #[command(flatten)]
        common: Common,
        /// Comma-separated complex coordinates, e.g. 0.5,0.1+0.2i.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// ball or siegel (for `metric`).
        #[arg(long)]
        model: Option<String>,
    },
    /// List the map zoo.
    Zoo,
}

#[derive(Args)]
struct Common {
    /// Zoo name (append -siegel for the Cayley conjugate) or inline JSON.
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    cap: Option<u32>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
    /// constant or tilted (1 + Re t1).
    #[arg(long)]
    factors: Option<String>,
    #[arg(long = "K")]
    k: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            map: self.map.clone(),
            cap: self.cap,
            tol: self.tol,
            samples: self.samples,
            seed: self.seed,
            factors: self.factors.clone(),
            k: self.k,
            theta: self.theta,
            ..Options::default()
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::Verify { suite, common, timings } => {
            let opts = Options { timings, ..common.options() };
            let report = run_suite(&suite, &opts)?;
            if common.json {
                println!("{}", report.to_json(timings));
            } else {
                print!("{}", report.to_text(timings));
            }
            Ok(report.exit_code())
        }
        Cmd::Compute { what, common, point, model } => {
            let opts = Options { point, model, ..common.options() };
            let out = compute(&what, &opts)?;
            if common.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            Ok(0)
        }
        Cmd::Zoo => {
            for name in ZOO_NAMES {
                println!("{name}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
