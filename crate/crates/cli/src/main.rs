//! `equichi`: evaluate scenario files and print exact reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use equichi::scenario::{bundled, render_text, run_text, Options, Report, BUNDLED, SCHEMA};
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(name = "equichi", version, about = "Exact equivariant Euler characteristics of curves with group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate scenario files.
    Run {
        /// Scenario files, or bundled names with `--bundled` (all when empty).
        files: Vec<PathBuf>,
        /// Compare against expectations and run the independent oracles.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Worker threads; scenarios are evaluated independently.
        #[arg(long)]
        jobs: Option<usize>,
        /// Treat the arguments as names of bundled scenarios.
        #[arg(long)]
        bundled: bool,
    },
    /// Print the JSON schema for scenario files.
    Schema,
    /// List bundled scenarios, or print one.
    Bundled { name: Option<String> },
}

enum Outcome {
    Report(Box<Report>),
    Failed { source: String, code: &'static str, message: String },
}

fn error_doc(source: &str, code: &str, message: &str) -> serde_json::Value {
    json!({ "error": { "source": source, "code": code, "message": message } })
}

fn seed_from_env() -> Result<Option<u64>, String> {
    match std::env::var("EQUICHI_SEED") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| format!("EQUICHI_SEED is not an integer: {s:?}")),
        Err(_) => Ok(None),
    }
}

fn load(arg: &PathBuf, from_bundle: bool) -> Result<String, (&'static str, String)> {
    if from_bundle {
        let name = arg.to_string_lossy();
        return bundled(&name).map(str::to_string).ok_or(("unknown_bundled", format!("no bundled scenario {name:?}")));
    }
    std::fs::read_to_string(arg).map_err(|e| ("io_error", e.to_string()))
}

fn run(files: Vec<PathBuf>, check: bool, format: Format, jobs: Option<usize>, from_bundle: bool) -> ExitCode {
    let seed = match seed_from_env() {
        Ok(s) => s,
        Err(m) => {
            eprintln!("{}", error_doc("EQUICHI_SEED", "bad_seed", &m));
            return ExitCode::from(2);
        }
    };
    let files: Vec<PathBuf> = if from_bundle && files.is_empty() {
        BUNDLED.iter().map(|(n, _)| PathBuf::from(n)).collect()
    } else {
        files
    };
    if files.is_empty() {
        eprintln!("{}", error_doc("arguments", "no_input", "no scenario files given"));
        return ExitCode::from(2);
    }
    let opts = Options { check, seed };
    let evaluate = |f: &PathBuf| -> Outcome {
        let source = f.to_string_lossy().into_owned();
        match load(f, from_bundle) {
            Err((code, message)) => Outcome::Failed { source, code, message },
            Ok(text) => match run_text(&text, opts) {
                Ok(r) => Outcome::Report(Box::new(r)),
                Err(e) => Outcome::Failed { source, code: e.code(), message: e.to_string() },
            },
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{}", error_doc("--jobs", "thread_pool", &e.to_string()));
            return ExitCode::from(2);
        }
    };
    let outcomes: Vec<Outcome> = pool.install(|| files.par_iter().map(evaluate).collect());

    let mut errors = false;
    let mut failed = false;
    let mut docs = Vec::new();
    for o in &outcomes {
        match o {
            Outcome::Report(r) => {
                failed |= !r.passed;
                match format {
                    Format::Json => docs.push(serde_json::to_value(r).expect("reports serialize")),
                    Format::Text => print!("{}", render_text(r)),
                }
            }
            Outcome::Failed { source, code, message } => {
                errors = true;
                let doc = error_doc(source, code, message);
                match format {
                    Format::Json => docs.push(doc),
                    Format::Text => eprintln!("{doc}"),
                }
            }
        }
    }
    if let Format::Json = format {
        let out = if docs.len() == 1 { docs.pop().expect("one") } else { serde_json::Value::Array(docs) };
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    }
    if errors {
        ExitCode::from(2)
    } else if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { files, check, format, jobs, bundled } => run(files, check, format, jobs, bundled),
        Command::Schema => {
            print!("{SCHEMA}");
            ExitCode::SUCCESS
        }
        Command::Bundled { name: None } => {
            for (n, _) in BUNDLED {
                println!("{n}");
            }
            ExitCode::SUCCESS
        }
        Command::Bundled { name: Some(n) } => match bundled(&n) {
            Some(t) => {
                print!("{t}");
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("{}", error_doc(&n, "unknown_bundled", "no bundled scenario with this name"));
                ExitCode::from(2)
            }
        },
    }
}
