//! `spschur`: list and run verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spschur_cli::{catalog, exit_code, find, table_csv, update_golden, write_atomic, CliError, CliResult, Params, Range};

#[derive(Parser)]
#[command(name = "spschur", version, about = "Verification suites for transvection Schur partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every suite id with its description and flags.
    List,
    /// Run one suite and write its JSON report.
    Run {
        suite: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write tabular values as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Overwrite the stored golden report and print the diff.
        #[arg(long)]
        update_goldens: bool,
    },
    /// Run every suite with default parameters.
    RunAll {
        /// Directory receiving one `<suite>.json` per suite.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        update_goldens: bool,
    },
}

#[derive(Args)]
struct ParamArgs {
    /// Dimension of the symplectic space.
    #[arg(long)]
    n: Option<usize>,
    /// Family: sym-n+1, sym-n+2, so-plus or so-minus.
    #[arg(long)]
    family: Option<String>,
    /// Inclusive range `LO..HI` (of n or m, depending on the suite).
    #[arg(long)]
    range: Option<Range>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of blocks in a relation system (2 or 3).
    #[arg(long)]
    r: Option<usize>,
}

impl From<ParamArgs> for Params {
    fn from(a: ParamArgs) -> Self {
        Params {
            n: a.n,
            family: a.family,
            range: a.range,
            seed: a.seed,
            r: a.r,
        }
    }
}

fn list() {
    for s in catalog() {
        let flags: Vec<String> = s.flags.iter().map(|f| format!("--{f}")).collect();
        println!("{:<28} {}  {}", s.id, s.anchor, flags.join(" "));
    }
}

fn run_one(suite: &str, params: Params, out: Option<PathBuf>, csv: Option<PathBuf>, update: bool) -> CliResult<i32> {
    let descriptor = find(suite)?;
    if update && params != Params::default() {
        return Err(CliError::InvalidParams("goldens are stored for default parameters only".into()));
    }
    let report = descriptor.run(&params)?;
    match out {
        Some(path) => write_atomic(&path, &report.to_json())?,
        None => print!("{}", report.to_json()),
    }
    if let Some(path) = csv {
        match table_csv(&report)? {
            Some(text) => write_atomic(&path, &text)?,
            None => return Err(CliError::InvalidParams(format!("{suite} has no tabular values"))),
        }
    }
    if update {
        eprint!("{}", update_golden(&report)?);
    }
    let code = exit_code(&report);
    eprintln!("{suite}: {}", if code == 0 { "pass" } else { "fail" });
    for c in report.failures() {
        eprintln!("  fail: {}{}", c.name, c.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default());
    }
    Ok(code)
}

fn run_all(out: Option<PathBuf>, update: bool) -> CliResult<i32> {
    let mut worst = 0;
    for s in catalog() {
        let report = s.run(&Params::default())?;
        if let Some(dir) = &out {
            write_atomic(&dir.join(format!("{}.json", s.id)), &report.to_json())?;
        }
        if update {
            eprint!("{}", update_golden(&report)?);
        }
        let code = exit_code(&report);
        println!("{:<28} {}", s.id, if code == 0 { "pass" } else { "fail" });
        worst = worst.max(code);
    }
    Ok(worst)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::List => {
            list();
            Ok(0)
        }
        Command::Run {
            suite,
            params,
            out,
            csv,
            update_goldens,
        } => run_one(&suite, params.into(), out, csv, update_goldens),
        Command::RunAll { out, update_goldens } => run_all(out, update_goldens),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
