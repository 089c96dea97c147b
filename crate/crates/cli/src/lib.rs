//! Front end for `lefschetz-core`: system files, the analysis pipeline, the
//! almost-complete-intersection batches and the genericity sweep, all with
//! JSON reports.

pub mod batch;
pub mod error;
pub mod pipeline;
pub mod report;
pub mod sweep;
pub mod sysfile;

pub use error::{CliError, Result};
pub use pipeline::{analyze, analyze_milnor, derive_seed, Analysis, AnalyzeOptions, Status};
pub use report::{AciBatchReport, AnalysisReport, SweepSummary};

/// Pretty JSON with a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
