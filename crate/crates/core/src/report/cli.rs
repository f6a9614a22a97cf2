use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::json;

use super::{run, Command, JobSpec};
use crate::error::{Error, Result};
use crate::exact::parse_q;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Normalize,
    Check,
    Admissible,
    Classify,
    Koszul,
    Quantize,
    Diagram,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Normalize => Command::Normalize,
            Cmd::Check => Command::Check,
            Cmd::Admissible => Command::Admissible,
            Cmd::Classify => Command::Classify,
            Cmd::Koszul => Command::Koszul,
            Cmd::Quantize => Command::Quantize,
            Cmd::Diagram => Command::Diagram,
        }
    }
}

/// Exact tools for linear torus actions and their symplectic quotients.
#[derive(Debug, Parser)]
#[command(name = "torusq", version)]
struct Args {
    command: Cmd,
    /// Job spec JSON file, or `-` for standard input.
    input: Option<String>,
    /// Weight matrix as JSON, e.g. `[[1,-1]]`.
    #[arg(long)]
    weights: Option<String>,
    /// Comma separated rationals, e.g. `0,1/2`.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    maxdeg: Option<u32>,
    /// Cap on the number of column subsets tested for admissibility.
    #[arg(long)]
    budget: Option<u64>,
    /// SVG output path for `diagram`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Add all invariant monomials up to this degree to the invariants.
    #[arg(long)]
    enumerate: Option<u32>,
    /// Invariant polynomial; may be repeated.
    #[arg(long = "invariant")]
    invariants: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn job_from_args(args: &Args, stdin: &mut dyn Read) -> Result<JobSpec> {
    let mut job = match args.input.as_deref() {
        Some("-") => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
            JobSpec::from_json(&s)?
        }
        Some(path) => {
            let s = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
            JobSpec::from_json(&s)?
        }
        None => JobSpec::default(),
    };
    if let Some(w) = &args.weights {
        job.weights = serde_json::from_str(w).map_err(|e| Error::InvalidInput(format!("--weights: {e}")))?;
    }
    if args.input.is_none() && args.weights.is_none() {
        return Err(Error::InvalidInput("no job spec and no --weights given".into()));
    }
    if let Some(mu) = &args.mu {
        job.mu = Some(mu.split(',').map(|x| parse_q(x.trim())).collect::<Result<_>>()?);
    }
    job.order = args.order.or(job.order);
    job.maxdeg = args.maxdeg.or(job.maxdeg);
    job.budget = args.budget.or(job.budget);
    job.seed = args.seed.or(job.seed);
    job.enumerate = args.enumerate.or(job.enumerate);
    if !args.invariants.is_empty() {
        job.invariants = Some(args.invariants.clone());
    }
    Ok(job)
}

fn error_document(e: &Error) -> String {
    let doc = json!({ "tool": "torusq", "error": { "code": e.exit_code(), "message": e.to_string() } });
    serde_json::to_string_pretty(&doc).expect("json") + "\n"
}

/// Runs the command line tool in-process. Exit codes: 0 success, 2 invalid
/// input, 3 refused or unsupported.
pub fn run_cli<I, T>(argv: I, stdin: &mut dyn Read) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutcome { code, stdout: text, stderr: String::new() }
            } else {
                CliOutcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = job_from_args(&args, stdin).and_then(|job| run(args.command.into(), &job, args.out.as_deref()));
    match result {
        Ok(report) => CliOutcome { code: 0, stdout: report.to_json() + "\n", stderr: String::new() },
        Err(e) => CliOutcome { code: e.exit_code(), stdout: error_document(&e), stderr: format!("torusq: {e}\n") },
    }
}
