use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minic_core::harness;
use minic_core::interp::ABORT_STATUS;
use minic_core::{run_source, ExecConfig, Limits, Termination};

const FRONTEND_STATUS: u8 = 2;
const IO_STATUS: u8 = 3;

#[derive(Parser)]
#[command(
    name = "minic",
    version,
    about = "Run MiniC programs on a metadata-checked runtime"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one program; its stdout and stderr pass through.
    Run(RunArgs),
    /// Run every `.c` file in a directory against its `.expect` file.
    Check(CheckArgs),
}

#[derive(Args)]
struct LimitArgs {
    /// Abort the guest after this many evaluation steps.
    #[arg(long, env = "MINIC_MAX_STEPS")]
    max_steps: Option<u64>,
    /// Abort the guest when the call depth exceeds this.
    #[arg(long)]
    max_depth: Option<usize>,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(s) = self.max_steps {
            l.max_steps = s;
        }
        if let Some(d) = self.max_depth {
            l.max_depth = d;
        }
        l
    }
}

#[derive(Args)]
struct RunArgs {
    file: PathBuf,
    /// Print a diagnostic as a single JSON object on stderr.
    #[arg(long)]
    json: bool,
    /// Feed this file to the guest's stdin.
    #[arg(long, value_name = "FILE")]
    stdin: Option<PathBuf>,
    #[command(flatten)]
    limits: LimitArgs,
    /// Extra arguments passed to the guest's `main`.
    #[arg(last = true)]
    args: Vec<String>,
}

#[derive(Args)]
struct CheckArgs {
    dir: PathBuf,
    #[command(flatten)]
    limits: LimitArgs,
}

fn io_failure(what: &str, path: &Path, e: std::io::Error) -> ExitCode {
    eprintln!("minic: cannot read {what} {}: {e}", path.display());
    ExitCode::from(IO_STATUS)
}

fn cmd_run(a: RunArgs) -> ExitCode {
    let source = match std::fs::read_to_string(&a.file) {
        Ok(s) => s,
        Err(e) => return io_failure("source file", &a.file, e),
    };
    let stdin = match &a.stdin {
        Some(p) => match std::fs::read(p) {
            Ok(b) => b,
            Err(e) => return io_failure("stdin file", p, e),
        },
        None => Vec::new(),
    };
    let name = a.file.display().to_string();
    let mut argv = vec![name.clone()];
    argv.extend(a.args.iter().cloned());
    let config = ExecConfig {
        argv,
        stdin,
        limits: a.limits.limits(),
    };
    let out = run_source(&source, &name, &config);

    // Guest output first, so a diagnostic is the last thing on stderr.
    let _ = std::io::stdout().write_all(&out.stdout);
    let _ = std::io::stdout().flush();
    let mut err = std::io::stderr();
    let _ = err.write_all(&out.stderr);
    match out.termination {
        Termination::Exit(status) => {
            if let Some(note) = &out.note {
                if a.json {
                    let _ = writeln!(
                        err,
                        "{}",
                        serde_json::json!({ "kind": "GuestAbort", "message": note })
                    );
                } else {
                    let _ = writeln!(err, "minic: {note}");
                }
            }
            ExitCode::from((status & 0xff) as u8)
        }
        Termination::Aborted(d) => {
            let _ = if a.json {
                writeln!(err, "{}", d.to_json())
            } else {
                write!(err, "{}", d.render())
            };
            if d.kind.is_frontend() {
                ExitCode::from(FRONTEND_STATUS)
            } else {
                ExitCode::from(ABORT_STATUS as u8)
            }
        }
    }
}

fn cmd_check(a: CheckArgs) -> ExitCode {
    let results = match harness::check_dir(&a.dir, &a.limits.limits()) {
        Ok(r) => r,
        Err(e) => return io_failure("directory", &a.dir, e),
    };
    let passed = results.iter().filter(|r| r.passed).count();
    for r in &results {
        if r.passed {
            println!("PASS {}", r.name);
        } else {
            println!("FAIL {}: {}", r.name, r.message);
        }
    }
    println!("{passed}/{}", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(a) => cmd_run(a),
        Command::Check(a) => cmd_check(a),
    }
}
