use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use riesz_cover::cli::run::{carrier_by_name, parse_func_input, run_fd_with};
use riesz_cover::cli::spec_file::parse_json;
use riesz_cover::cli::{fixtures, properties, run_func, CliError, PropertyConfig, Report, SpaceSpecFile};
use riesz_cover::par::Exec;

#[derive(Parser)]
#[command(name = "riesz", version, about = "Exact vector lattice covers of pre-Riesz spaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    report: Format,
    /// Run data-parallel batches on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run one operation on a space file or on function-space input.
    Run {
        #[arg(long)]
        op: String,
        /// Finite-dimensional space definition (JSON).
        #[arg(long, conflicts_with_all = ["carrier", "input"])]
        space: Option<PathBuf>,
        /// Operation arguments as a JSON object.
        #[arg(long, default_value = "{}")]
        args: String,
        /// Function-space carrier: pp2, pa, c1-pp2, namioka, x0, x, x-rho.
        #[arg(long, requires = "input")]
        carrier: Option<String>,
        /// Function-space input document (JSON).
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Check the worked examples end to end.
    Fixtures,
    /// Run the seeded property suites.
    Properties {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Defaults to twice `--trials`.
        #[arg(long)]
        function_trials: Option<usize>,
    },
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => print!("{}", text()),
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match &cli.command {
        Command::Run { op, space, args, carrier, input } => {
            let report: Report = match (space, carrier, input) {
                (Some(path), _, _) => {
                    let spec = SpaceSpecFile::parse(&std::fs::read_to_string(path)?)?;
                    let args: Value = parse_json(args)?;
                    run_fd_with(&spec.space()?, &spec.named_vectors(), op, &args, exec)?
                }
                (None, Some(name), Some(path)) => {
                    let carrier = carrier_by_name(name).ok_or_else(|| CliError::Arg(format!("unknown carrier `{name}`")))?;
                    run_func(&carrier, op, &parse_func_input(&std::fs::read_to_string(path)?)?)?
                }
                _ => return Err(CliError::Arg("run needs --space, or --carrier with --in".into())),
            };
            emit(cli.report, &report, || report.to_string());
            Ok(report.outcome.exit_code())
        }
        Command::Fixtures => {
            let results = fixtures()?;
            emit(cli.report, &results, || {
                let mut out = String::new();
                for r in &results {
                    out += &format!("{} {}\n", if r.passed() { "PASS" } else { "FAIL" }, r.name);
                    for c in r.checks.iter().filter(|c| !c.pass) {
                        out += &format!("  {}: {}\n", c.name, c.diff);
                    }
                }
                let passed = results.iter().filter(|r| r.passed()).count();
                out + &format!("{passed}/{} fixtures pass\n", results.len())
            });
            Ok(if results.iter().all(|r| r.passed()) { 0 } else { 1 })
        }
        Command::Properties { seed, trials, function_trials } => {
            if *trials == 0 {
                return Err(CliError::Arg("--trials must be at least 1".into()));
            }
            let mut cfg = PropertyConfig::new(*seed, *trials);
            cfg.exec = exec;
            if let Some(f) = function_trials {
                cfg.function_trials = *f;
            }
            let r = properties(&cfg);
            emit(cli.report, &r, || {
                let mut out = format!("seed {} trials {} function trials {}\n", r.seed, r.trials, r.function_trials);
                for p in &r.properties {
                    out += &format!("{:>5} pass {:>3} fail  {}\n", p.passed, p.failed, p.name);
                    if let Some(c) = &p.counterexample {
                        out += &format!("      first counterexample: {c}\n");
                    }
                }
                for rej in &r.rejected {
                    out += &format!("rejected {rej}\n");
                }
                out
            });
            Ok(if r.all_passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
