use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use nkflag::classify::GridSpec;
use nkflag::par::Execution;
use nkflag_cli::{emit, run, Format, Suite, SuiteSpec};

/// Exact and numeric verification of the nearly Kähler structure on
/// SL(3,R)/(R x SO(2)) and its almost complex totally geodesic surfaces.
#[derive(Debug, Parser)]
#[command(name = "nkflag", version)]
struct Args {
    /// field, algebra, tensors, curvature, examples, classify or all
    #[arg(default_value = "all")]
    suite: Suite,
    /// Tolerance for numeric cross-checks
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Random samples per numeric sweep
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Case 4 grid as amin:amax:astep,bmin:bmax:bstep (rational endpoints)
    #[arg(long, default_value = "0:3:1/20,-3:3:1/20")]
    grid: GridSpec,
    /// text or json
    #[arg(long, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run every sweep on the calling thread
    #[arg(long)]
    sequential: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 2 } else { 0 });
        }
    };
    let spec = SuiteSpec {
        suite: args.suite,
        tol: args.tol,
        samples: args.samples,
        grid: args.grid,
        format: args.format,
        seed: args.seed,
        execution: if args.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    let report = match run(&spec) {
        Ok(r) => r,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    let bytes = emit(&report, spec.format);
    let written = match &args.out {
        Some(path) => std::fs::write(path, &bytes),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)
        }
    };
    if let Err(err) = written {
        eprintln!("error: cannot write report: {err}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
