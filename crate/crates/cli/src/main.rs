use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rees_cli::{exit, run_analyze, run_corpus, run_verify, write_atomic, CliError, JobSpec, Overrides, Report};
use rees_core::FieldSpec;

#[derive(Parser)]
#[command(name = "rees", version, about = "Defining ideals of Rees algebras of linearly presented modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and print the report.
    Analyze {
        job: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the pipeline and check the defining-ideal claims one by one.
    Verify {
        job: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run every job in a directory against its expected-report sidecar.
    Corpus {
        dir: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    /// Coefficient field: `q` or `zp:<prime>`.
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldSpec>,
    /// Monomial order (only `grevlex`).
    #[arg(long)]
    order: Option<String>,
    /// Approximation chain depth.
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Per-job time budget in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long)]
    allow_nonlinear: bool,
    /// Add wall-clock milliseconds per stage to the report.
    #[arg(long)]
    timings: bool,
    /// Report file (analyze, verify) or report directory (corpus).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: rees_core::Error| e.to_string())
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            field: self.field,
            order: self.order.clone(),
            depth: self.depth,
            seed: self.seed,
            timeout: self.timeout,
            allow_nonlinear: self.allow_nonlinear,
            timings: self.timings,
        }
    }
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, &report.to_json()),
        None => {
            print!("{}", report.to_json());
            Ok(())
        }
    }
}

fn single(job: &Path, common: &Common, verify: bool) -> Result<i32, CliError> {
    let spec = JobSpec::load(job)?;
    let o = common.overrides();
    let report = if verify { run_verify(spec, &o)? } else { run_analyze(spec, &o)? };
    emit(&report, common.out.as_ref())?;
    if let Some(reason) = &report.analysis.interrupted {
        eprintln!("interrupted: {reason}");
    }
    for a in report.assertions.iter().flatten() {
        eprintln!("{} {}", if a.passed { "PASS" } else { "FAIL" }, a.name);
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { job, common } => single(job, common, false),
        Command::Verify { job, common } => single(job, common, true),
        Command::Corpus { dir, common, jobs } => run_corpus(dir, &common.overrides(), *jobs, common.out.as_deref()).map(|s| {
            print!("{}", s.table());
            if s.all_passed() {
                exit::OK
            } else {
                exit::MISMATCH
            }
        }),
    };
    let code = result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}
