use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spinquat_cli::scenario::KINDS;
use spinquat_cli::{load_scenario, run::with_format, run_scenario, ConfigError, Format, RunError};

const OUT_DIR_ENV: &str = "SPINQUAT_OUT_DIR";

const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "spinquat",
    version,
    about = "Run spin-dynamics and Maxwell-field scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its table and summary.
    Run {
        scenario: PathBuf,
        /// Output directory (falls back to $SPINQUAT_OUT_DIR, then ".").
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for sweeps (default: available parallelism).
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        threads: Option<u16>,
        /// Override the scenario's output format.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Check a scenario file and report every invalid field.
    Validate { scenario: PathBuf },
    /// List the scenario kinds.
    ListKinds,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

fn report_config(path: &std::path::Path, e: &ConfigError) -> ExitCode {
    eprintln!("{}: invalid scenario", path.display());
    for fe in &e.0 {
        eprintln!("  {fe}");
    }
    ExitCode::from(EXIT_CONFIG)
}

fn read(path: &std::path::Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(EXIT_IO)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_CONFIG)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::ListKinds => {
            for k in KINDS {
                println!("{:<16}{}", k.name(), k.describe());
            }
            ExitCode::SUCCESS
        }
        Command::Validate { scenario } => {
            let text = match read(&scenario) {
                Ok(t) => t,
                Err(code) => return code,
            };
            match load_scenario(&text) {
                Ok(s) => {
                    println!("{}: ok ({})", scenario.display(), s.kind);
                    ExitCode::SUCCESS
                }
                Err(e) => report_config(&scenario, &e),
            }
        }
        Command::Run {
            scenario,
            out,
            threads,
            format,
        } => {
            let text = match read(&scenario) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let s = match load_scenario(&text) {
                Ok(s) => with_format(&s, format.map(Format::from)),
                Err(e) => return report_config(&scenario, &e),
            };
            let out_dir = out
                .or_else(|| {
                    std::env::var_os(OUT_DIR_ENV)
                        .filter(|v| !v.is_empty())
                        .map(PathBuf::from)
                })
                .unwrap_or_else(|| PathBuf::from("."));
            match run_scenario(&s, &out_dir, threads.map(usize::from)) {
                Ok(report) => {
                    match serde_json::to_string_pretty(&report) {
                        Ok(text) => println!("{text}"),
                        Err(e) => eprintln!("could not encode report: {e}"),
                    }
                    ExitCode::SUCCESS
                }
                Err(RunError::Config(e)) => report_config(&scenario, &e),
                Err(e @ RunError::Io { .. }) => {
                    eprintln!("{e}");
                    ExitCode::from(EXIT_IO)
                }
            }
        }
    }
}
