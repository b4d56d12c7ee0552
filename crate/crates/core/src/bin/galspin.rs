use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use galspin::config::{Suite, SuiteConfig};
use galspin::report::{emit_report, Format, Report};
use galspin::suites::run;

#[derive(Parser)]
#[command(name = "galspin", version, about = "Spin-statistics checks for Galilean quantum fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a report.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
        /// Overrides the master seed from the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Suites to run instead of those in the config (repeatable).
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Run suites in parallel.
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    let Command::Run { config, format, seed, suites, parallel } = cli.command;
    let mut cfg = match SuiteConfig::from_path(&config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if !suites.is_empty() {
        let mut chosen = Vec::new();
        for name in &suites {
            match Suite::parse_list(name) {
                Ok(list) => chosen.extend(list.into_iter().filter(|s| !chosen.contains(s)).collect::<Vec<_>>()),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_CONFIG);
                }
            }
        }
        cfg.suites = chosen;
    }
    cfg.parallel |= parallel;
    let results = run(&cfg);
    let report = Report::new(&cfg, &results);
    let format = match format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
    };
    print!("{}", emit_report(&report, format));
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
