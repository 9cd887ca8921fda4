use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use critical_fock_cli::{run_job, CliError, Command, JobConfig};

/// Run one verification job.
///
/// Exit status: 0 pass, 1 a check failed, 2 bad config, 3 carrier or
/// precondition violation.
#[derive(Parser)]
#[command(name = "critical-fock", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Job config (JSON); `-` reads stdin.
    #[arg(long)]
    config: PathBuf,
    /// Report path; overrides `output` in the config. Default: stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    quiet: bool,
}

fn read_config(path: &PathBuf) -> Result<JobConfig, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    JobConfig::parse(&text)
}

fn run(args: Args) -> Result<bool, CliError> {
    let config = read_config(&args.config)?;
    let report = run_job(args.command, &config)?;
    let json = report.to_json();
    match args.out.as_ref().or(config.output.as_ref()) {
        Some(path) => {
            std::fs::write(path, json)?;
            if !args.quiet {
                print!("{}", report.summary());
            }
        }
        None => {
            print!("{json}");
            if !args.quiet {
                eprint!("{}", report.summary());
            }
        }
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("critical-fock: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
