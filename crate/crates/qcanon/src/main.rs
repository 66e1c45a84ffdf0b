use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcanon::export::{crystal_dot, tables};
use qcanon::format::parse_vector;
use qcanon::run::{run_suite, write_file, ConfigError, Report, RunConfig, EXIT_FAIL, EXIT_INPUT};
use qcanon::suites::Suite;

#[derive(Parser)]
#[command(name = "qcanon", version, about = "Exact checks and tables for quantum-group modules, crystals and canonical bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write JSON reports
    Check {
        #[command(flatten)]
        common: Common,
        /// suites to run (repeatable); all by default
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
    },
    /// Export the crystal graph of L(weight) as DOT text
    Crystal(Common),
    /// Write the weight-dimension table and transition matrices as CSV
    Tables(Common),
    /// Mutation-to-source sequences and contracting cocharacters
    Mutate(Common),
    /// Sign-twist identities on a seeded random corpus
    Signs(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// quiver file, text or JSON
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// highest weight as <i, lambda> per vertex, e.g. 1,1 (default: framing1 of the file)
    #[arg(long, value_parser = vector)]
    weight: Option<Vector>,
    /// left tensor factor (default: framing2 of the file)
    #[arg(long, value_parser = vector)]
    weight2: Option<Vector>,
    /// height bound on weight spaces
    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    height: i64,
    /// vertex names, smallest first, e.g. 2,1
    #[arg(long)]
    order: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// output directory (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

/// One integer vector per flag occurrence.
#[derive(Clone)]
struct Vector(Vec<i64>);

fn vector(s: &str) -> Result<Vector, String> {
    parse_vector(s).map(Vector).map_err(|e| e.to_string())
}

impl Common {
    fn config(&self, suites: Vec<Suite>) -> RunConfig {
        RunConfig {
            quiver: self.quiver.clone(),
            weight: self.weight.clone().map(|v| v.0),
            weight2: self.weight2.clone().map(|v| v.0),
            height: self.height,
            order: self.order.clone(),
            suites,
            out: self.out.clone(),
            seed: self.seed,
            ..RunConfig::default()
        }
    }
}

fn report(config: &RunConfig) -> Result<u8, ConfigError> {
    let r: Report = run_suite(config)?;
    for s in &r.suites {
        let status = if s.passed { "PASS" } else { "FAIL" };
        eprintln!("{:<10} {status}  {} checks, {} failures", s.suite.name(), s.checks, s.failure_count);
        for f in &s.failures {
            eprintln!("    {f}");
        }
    }
    if config.out.is_none() {
        print!("{}", r.to_json());
    }
    Ok(r.exit_code())
}

/// Writes `(name, contents)` pairs to the output directory or stdout.
fn emit(out: &Option<PathBuf>, files: &[(String, String)]) -> Result<(), ConfigError> {
    match out {
        Some(dir) => files.iter().try_for_each(|(n, c)| write_file(dir, n, c)),
        None => {
            for (n, c) in files {
                if files.len() > 1 {
                    println!("# {n}");
                }
                print!("{c}");
            }
            Ok(())
        }
    }
}

fn export(common: &Common, make: impl Fn(&qcanon::suites::Engine) -> Result<Vec<(String, String)>, String>) -> Result<u8, ConfigError> {
    let config = common.config(vec![]);
    let loaded = config.load()?;
    let engine = RunConfig::engine_or_err(&loaded)?;
    match make(engine) {
        Ok(files) => {
            emit(&common.out, &files)?;
            Ok(0)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            Ok(EXIT_FAIL)
        }
    }
}

fn run(cli: Cli) -> Result<u8, ConfigError> {
    match cli.command {
        Command::Check { common, suites } => {
            let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites };
            report(&common.config(suites))
        }
        Command::Crystal(common) => export(&common, |e| {
            let c = e.crystal()?;
            Ok(vec![("crystal.dot".to_string(), crystal_dot(c, &e.quiver))])
        }),
        Command::Tables(common) => export(&common, tables),
        Command::Mutate(common) => report(&common.config(vec![Suite::Mutation])),
        Command::Signs(common) => report(&common.config(vec![Suite::Signs])),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
