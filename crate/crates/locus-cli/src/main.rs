//! Batch front end for the finite-category engine.
//!
//! Exit codes: 0 = verdict computed (including negative verdicts),
//! 2 = schema error, 3 = engine error.

mod job;
mod report;

use clap::{Args, Parser, Subcommand};
use report::RunError;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "locus",
    about = "Base points, localization, and global objects over finite category instances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonFlags {
    /// Override the job's global size bound.
    #[arg(long)]
    bound: Option<u64>,
    /// Override the job's mode (strict | permissive).
    #[arg(long)]
    mode: Option<String>,
    /// Report detail (full | summary).
    #[arg(long, default_value = "full")]
    format: String,
    /// Write output here instead of stdout (a directory for `batch`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one job file and emit its report.
    Run {
        job_file: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Run every .json job in a directory, in filename order.
    Batch {
        directory: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
}

const EXIT_SCHEMA: u8 = 2;
const EXIT_ENGINE: u8 = 3;

fn load_job(path: &Path, flags: &CommonFlags) -> Result<job::JobSpec, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut spec: job::JobSpec =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(b) = flags.bound {
        spec.bound = Some(b);
    }
    if let Some(m) = &flags.mode {
        spec.mode = Some(m.clone());
    }
    Ok(spec)
}

fn summary_flag(flags: &CommonFlags) -> Result<bool, String> {
    match flags.format.as_str() {
        "full" => Ok(false),
        "summary" => Ok(true),
        other => Err(format!("unknown --format `{other}`; expected full or summary")),
    }
}

fn run_one(path: &Path, flags: &CommonFlags) -> (u8, String, String) {
    let summary = match summary_flag(flags) {
        Ok(s) => s,
        Err(e) => return (EXIT_SCHEMA, e.clone(), e),
    };
    let spec = match load_job(path, flags) {
        Ok(s) => s,
        Err(e) => return (EXIT_SCHEMA, format!("ERROR {e}"), e),
    };
    let start = Instant::now();
    match report::run_job(&spec) {
        Ok(rep) => {
            let payload = report::render(&rep, summary);
            let timed = format!(
                "{{\n  \"elapsed_ms\": {},\n  \"payload\": {}}}\n",
                start.elapsed().as_millis(),
                payload.trim_end()
            );
            (0, rep.verdict.clone(), timed)
        }
        Err(RunError::Schema(e)) => {
            let msg = e.to_string();
            (EXIT_SCHEMA, format!("ERROR {msg}"), msg)
        }
        Err(e @ RunError::Engine { .. }) => {
            let msg = e.to_string();
            (EXIT_ENGINE, format!("ERROR {msg}"), msg)
        }
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { job_file, flags } => {
            let (code, _verdict, content) = run_one(&job_file, &flags);
            if code == 0 {
                if let Err(e) = write_output(&flags.out, &content) {
                    eprintln!("{e}");
                    return ExitCode::from(EXIT_SCHEMA);
                }
            } else {
                eprintln!("{content}");
            }
            ExitCode::from(code)
        }
        Command::Batch { directory, flags } => {
            let entries = match std::fs::read_dir(&directory) {
                Ok(es) => es,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", directory.display());
                    return ExitCode::from(EXIT_SCHEMA);
                }
            };
            let mut files: Vec<PathBuf> = entries
                .filter_map(|e| e.ok())
                .map(|e| e.path())
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            if let Some(dir) = &flags.out {
                if let Err(e) = std::fs::create_dir_all(dir) {
                    eprintln!("cannot create {}: {e}", dir.display());
                    return ExitCode::from(EXIT_SCHEMA);
                }
            }
            let mut worst = 0u8;
            for file in &files {
                let (code, verdict, content) = run_one(file, &flags);
                let name = file
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default();
                println!("{name}\t{verdict}");
                if code == 0 {
                    if let Some(dir) = &flags.out {
                        let target = dir.join(format!("{name}.report.json"));
                        if let Err(e) = std::fs::write(&target, &content) {
                            eprintln!("cannot write {}: {e}", target.display());
                            worst = worst.max(EXIT_SCHEMA);
                        }
                    }
                } else {
                    worst = worst.max(code);
                }
            }
            ExitCode::from(worst)
        }
    }
}
