//! JSON front end for the shuffle-algebra engine.

pub mod error;
pub mod input;
pub mod jobs;

pub use error::{CliError, Status};
pub use jobs::{run_job, run_value, Job, Overrides};

/// The built-in verification batch.
pub const VERIFY_BATCH: &str = include_str!("../batches/verify.json");

/// Runs the built-in batch; the rendered output and its status.
pub fn run_verify_batch() -> (String, Status) {
    let input: serde_json::Value = serde_json::from_str(VERIFY_BATCH).expect("built-in batch is valid JSON");
    let (out, status) = run_value(&input, &Overrides::default());
    (render(&out), status)
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
