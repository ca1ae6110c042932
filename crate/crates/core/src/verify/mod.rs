//! Identity-verification suites, deterministic reports, and golden-file diffs.
//!
//! A failing identity is data, not an error: suites always complete and record
//! a verdict per parameter tuple.

mod record;
mod report;
mod suites;

pub use record::{params, parse_rational, CheckRecord, Params, Verdict};
pub use report::{compare_golden, emit_report, run_report, Format, GoldenDiff, Report, SuiteReport, FORMAT_VERSION};
pub use suites::{run_suite, symbolic, Ranges, VerifyConfig, NUMERIC_TOLERANCE, SUITES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("report format version {current} does not match golden version {golden}")]
    VersionMismatch { current: u32, golden: u32 },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("cannot parse report: {0}")]
    Parse(String),
}
