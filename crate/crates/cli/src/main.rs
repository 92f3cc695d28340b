use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use shuffle_cli::{render, run_value, run_verify_batch, Overrides, Status};

#[derive(Parser)]
#[command(name = "shuffle", version, about = "Exact shuffle-algebra computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a job (or an array of jobs) read from FILE, or stdin.
    Run {
        file: Option<PathBuf>,
        /// Substitute a parameter, e.g. `t1=hbar/2`.  Repeatable.
        #[arg(long = "substitute", value_name = "K=V")]
        substitute: Vec<String>,
        /// Series truncation order for phi-hat jobs.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Table of the symmetric function S(n, b, hbar) for n = 1..=n_max.
    SerreTable {
        #[arg(long = "n-max")]
        n_max: u32,
        #[arg(long)]
        limit: Option<u32>,
    },
    /// Run the built-in verification batch.
    Verify,
}

fn input_error(msg: String) -> ExitCode {
    print!("{}", render(&json!({ "status": Status::Input.label(), "error": msg })));
    ExitCode::from(Status::Input.code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, status) = match cli.command {
        Command::Verify => run_verify_batch(),
        Command::SerreTable { n_max, limit } => {
            let job = json!({ "command": "serre-table", "n_max": n_max, "limit": limit });
            let (v, s) = run_value(&job, &Overrides::default());
            (render(&v), s)
        }
        Command::Run {
            file,
            substitute,
            order,
        } => {
            let mut subs = Vec::new();
            for s in substitute {
                match s.split_once('=') {
                    Some((k, v)) => subs.push((k.trim().to_string(), v.trim().to_string())),
                    None => return input_error(format!("--substitute expects K=V, got {:?}", s)),
                }
            }
            let raw = match &file {
                Some(p) if p.as_os_str() != "-" => {
                    std::fs::read_to_string(p).map_err(|e| format!("{}: {}", p.display(), e))
                }
                _ => {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map(|_| buf)
                        .map_err(|e| e.to_string())
                }
            };
            let raw = match raw {
                Ok(r) => r,
                Err(e) => return input_error(e),
            };
            let value: Value = match serde_json::from_str(&raw) {
                Ok(v) => v,
                Err(e) => return input_error(format!("malformed JSON: {}", e)),
            };
            let ov = Overrides {
                substitute: subs,
                order,
            };
            let (v, s) = run_value(&value, &ov);
            (render(&v), s)
        }
    };
    print!("{}", text);
    ExitCode::from(status.code() as u8)
}
