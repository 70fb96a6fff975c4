use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coherence_cli::run::RunOptions;
use coherence_cli::scenario::verdict_name;
use coherence_cli::{bundled, classify_scenario, exit, parse_scenario, run_scenario, selftest, CliError, Scenario};

#[derive(Parser)]
#[command(name = "coherence", version, about = "Coherent-state dynamics for bosonic and fermionic modes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve scenarios and write trajectory and verdict CSV files.
    Run {
        /// Scenario files, or `bundled:<name>` for a built-in example.
        #[arg(required = true)]
        files: Vec<String>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long = "t-end")]
        t_end: Option<f64>,
        /// Directory for output files.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run scenarios concurrently.
        #[arg(long)]
        parallel: bool,
    },
    /// Print whether a scenario's Hamiltonian preserves coherent states.
    Classify {
        file: String,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long = "t-end")]
        t_end: Option<f64>,
    },
    /// Run built-in algebraic checks.
    Selftest,
    /// List built-in scenarios.
    List,
}

fn load(name: &str) -> Result<(Scenario, PathBuf), CliError> {
    let (text, path) = match name.strip_prefix("bundled:") {
        Some(b) => {
            let text = bundled::get(b).ok_or_else(|| CliError::Validation(format!("no bundled scenario `{b}`")))?;
            (text.to_string(), PathBuf::from(format!("{b}.ini")))
        }
        None => {
            let path = PathBuf::from(name);
            let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            (text, path)
        }
    };
    Ok((parse_scenario(&text)?, path))
}

fn run_one(name: &str, opts: &RunOptions) -> (i32, String) {
    let result = load(name).and_then(|(s, path)| run_scenario(&s, Some(Path::new(&path)), opts));
    match result {
        Ok(outcome) => {
            let status = if outcome.evaluation.passed() { "PASS" } else { "FAIL" };
            let mut msg = format!("{status} {name} -> {}\n", outcome.csv_path.display());
            for c in outcome.evaluation.checks.iter().filter(|c| !c.passed) {
                msg.push_str(&format!("  {} = {} (need {})\n", c.name, c.value, c.condition));
            }
            (outcome.exit_code(), msg)
        }
        Err(e) => (e.exit_code(), format!("ERROR {name}: {e}\n")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { files, dt, t_end, out, parallel } => {
            let opts = RunOptions { dt, t_end, out_dir: out };
            let results: Vec<(i32, String)> = if parallel {
                std::thread::scope(|scope| {
                    let handles: Vec<_> = files.iter().map(|f| scope.spawn(|| run_one(f, &opts))).collect();
                    handles.into_iter().map(|h| h.join().expect("scenario thread panicked")).collect()
                })
            } else {
                files.iter().map(|f| run_one(f, &opts)).collect()
            };
            for (_, msg) in &results {
                eprint!("{msg}");
            }
            results.iter().map(|(c, _)| *c).max().unwrap_or(exit::OK)
        }
        Command::Classify { file, dt, t_end } => {
            let opts = RunOptions { dt, t_end, out_dir: None };
            match load(&file).and_then(|(s, _)| classify_scenario(&s, &opts)) {
                Ok(c) => {
                    println!("verdict: {}", verdict_name(c.verdict));
                    println!("dynamic: {}", verdict_name(c.dynamic_verdict));
                    println!("max_residual: {:?}", c.max_residual);
                    if let Some(t) = c.forcing_onset {
                        println!("forcing_onset: {t:?}");
                    }
                    if c.agrees() {
                        exit::OK
                    } else {
                        exit::VERIFICATION_FAILED
                    }
                }
                Err(e) => {
                    eprintln!("ERROR {file}: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Selftest => {
            let checks = selftest::run_all();
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if checks.iter().all(|c| c.passed) {
                exit::OK
            } else {
                exit::VERIFICATION_FAILED
            }
        }
        Command::List => {
            for (name, _) in bundled::SCENARIOS {
                println!("bundled:{name}");
            }
            exit::OK
        }
    };
    ExitCode::from(code as u8)
}
