use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qcorr::report::analyze;
use qcorr::state_spec::StateSpec;
use qcorr::sweep::{self, Family};
use qcorr::verify::{self, Suite};
use qcorr::{Error, OptimizerOptions};

#[derive(Parser, Debug)]
#[command(name = "qcorr", version, about = "Total correlations of two-qubit states")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for optimizer restarts and random instances.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Random optimizer starts on top of the deterministic seeds.
    #[arg(long, global = true, default_value_t = 32)]
    restarts: usize,
    /// Tolerance for r-value comparisons.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze one state given as StateSpec JSON (argument, --file or stdin).
    Analyze {
        state: Option<String>,
        #[arg(long, conflicts_with = "state")]
        file: Option<PathBuf>,
    },
    /// Sweep a state family over a grid of p values.
    Sweep {
        #[arg(value_parser = ["werner", "horodecki"])]
        family: String,
        /// Defaults to 0 for werner and 0.01 for horodecki.
        #[arg(long)]
        p_min: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        p_max: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
    },
    /// Run a seeded property suite.
    Verify {
        #[arg(default_value = "all", value_parser = ["theorem1", "theorem2", "uncertainty", "bounds", "all"])]
        suite: String,
        /// Instances per suite; each suite has its own default.
        #[arg(long)]
        n: Option<usize>,
    },
}

enum Failure {
    Verify,
    Qcorr(Error),
    Input(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Qcorr(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Qcorr(e @ Error::UndefinedPcc(_))) => {
            eprintln!("error: {e}");
            eprintln!(
                "the Pearson correlation needs nonzero variance on both sides; it is not defined \
                 for a pure product state (or a state with a pure marginal)"
            );
            ExitCode::from(3)
        }
        Err(Failure::Qcorr(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let opts = OptimizerOptions {
        restarts: g.restarts,
        seed: g.seed,
        tol: g.tol,
        ..Default::default()
    };
    opts.validate()?;

    match cli.command {
        Command::Analyze { state, file } => {
            if g.format == Some(Format::Csv) {
                return Err(Failure::Input("analyze only supports --format json".into()));
            }
            let text = match (state, file) {
                (Some(s), _) => s,
                (None, Some(path)) => fs::read_to_string(&path)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                (None, None) => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let state = StateSpec::from_json(&text)?.to_state()?;
            let report = analyze(&state, &opts)?;
            let mut out = serde_json::to_string_pretty(&report.to_json()).expect("json");
            out.push('\n');
            emit(g, &out)
        }
        Command::Sweep {
            family,
            p_min,
            p_max,
            steps,
        } => {
            let family: Family = family.parse()?;
            let p_min = p_min.unwrap_or(family.default_p_min());
            let grid = sweep::grid(p_min, p_max, steps)?;
            let rows = grid
                .par_iter()
                .map(|&p| sweep::sweep_row(family, p, &opts))
                .collect::<qcorr::Result<Vec<_>>>()?;
            let out = match g.format.unwrap_or(Format::Csv) {
                Format::Csv => sweep::to_csv(&rows),
                Format::Json => serde_json::to_string_pretty(&rows).expect("json") + "\n",
            };
            emit(g, &out)
        }
        Command::Verify { suite, n } => {
            let suite: Suite = suite.parse()?;
            if n == Some(0) {
                return Err(Failure::Input("--n must be at least 1".into()));
            }
            let reports = verify::run(suite, n, g.seed, &opts)?;
            let out = match g.format {
                Some(Format::Json) => serde_json::to_string_pretty(&reports).expect("json") + "\n",
                Some(Format::Csv) => {
                    return Err(Failure::Input("verify does not support --format csv".into()))
                }
                None => reports.iter().map(|r| r.to_string()).collect(),
            };
            emit(g, &out)?;
            if reports.iter().all(|r| r.ok()) {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn emit(g: &Global, text: &str) -> Result<(), Failure> {
    match &g.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
