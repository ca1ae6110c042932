use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::record::{CheckRecord, Verdict};
use super::suites::{run_suite, VerifyConfig, NUMERIC_TOLERANCE, SUITES};
use super::VerifyError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    pub records: Vec<CheckRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    pub tool_version: String,
    pub suites: Vec<SuiteReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            other => Err(format!("unknown format '{other}' (expected json|md)")),
        }
    }
}

fn tolerance_for(name: &str) -> Option<String> {
    matches!(name, "zeta-mellin" | "zeta-variant").then(|| NUMERIC_TOLERANCE.to_string())
}

impl Report {
    pub fn new(suites: Vec<SuiteReport>) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            suites,
        }
    }

    pub fn records(&self) -> impl Iterator<Item = &CheckRecord> {
        self.suites.iter().flat_map(|s| s.records.iter())
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.records().filter(|r| r.verdict == verdict).count()
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, VerifyError> {
        serde_json::from_str(text).map_err(|e| VerifyError::Parse(e.to_string()))
    }

    /// One table per suite.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Verification report\n");
        let _ = writeln!(out, "format {} / tool {}\n", self.format_version, self.tool_version);
        for suite in &self.suites {
            let _ = writeln!(out, "## {}\n", suite.name);
            if let Some(t) = &suite.tolerance {
                let _ = writeln!(out, "tolerance: {t}\n");
            }
            if suite.records.is_empty() {
                let _ = writeln!(out, "(no records)\n");
                continue;
            }
            let _ = writeln!(out, "| params | lhs | rhs | verdict | residual |");
            let _ = writeln!(out, "|---|---|---|---|---|");
            for r in &suite.records {
                let ps: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let cell = |s: &str| s.replace('|', "\\|");
                let _ = writeln!(
                    out,
                    "| {} | `{}` | `{}` | {} | `{}` |",
                    ps.join(", "),
                    cell(&r.lhs),
                    cell(&r.rhs),
                    r.verdict,
                    cell(&r.residual)
                );
            }
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
        }
    }
}

/// Runs the named suites (or every suite for `"all"`) in canonical order.
pub fn run_report(names: &[&str], config: &VerifyConfig) -> Result<Report, VerifyError> {
    let selected: Vec<&str> = if names.contains(&"all") {
        SUITES.to_vec()
    } else {
        for n in names {
            if !SUITES.contains(n) {
                return Err(VerifyError::UnknownSuite(n.to_string()));
            }
        }
        SUITES.iter().copied().filter(|s| names.contains(s)).collect()
    };
    let suites = selected
        .into_iter()
        .map(|name| {
            Ok(SuiteReport {
                name: name.to_string(),
                tolerance: tolerance_for(name),
                records: run_suite(name, config)?,
            })
        })
        .collect::<Result<_, VerifyError>>()?;
    Ok(Report::new(suites))
}

/// Writes the rendered report to `out`, or stdout when `None`.
pub fn emit_report(report: &Report, format: Format, out: Option<&std::path::Path>) -> Result<(), VerifyError> {
    let text = report.render(format);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| VerifyError::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| VerifyError::Io(e.to_string()))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GoldenDiff {
    pub added: Vec<String>,
    pub removed: Vec<String>,
    pub changed: Vec<String>,
}

impl GoldenDiff {
    pub fn is_clean(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty() && self.changed.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (label, items) in [("added", &self.added), ("removed", &self.removed), ("changed", &self.changed)] {
            for item in items {
                let _ = writeln!(out, "{label}: {item}");
            }
        }
        out
    }
}

fn record_key(r: &CheckRecord) -> String {
    let ps: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{}[{}]", r.suite, ps.join(","))
}

/// Field-by-field comparison; `added` means present now but not in the golden file.
pub fn compare_golden(current: &Report, golden: &Report) -> Result<GoldenDiff, VerifyError> {
    if current.format_version != golden.format_version {
        return Err(VerifyError::VersionMismatch {
            current: current.format_version,
            golden: golden.format_version,
        });
    }
    let mut diff = GoldenDiff::default();
    let suite_names = |r: &Report| r.suites.iter().map(|s| s.name.clone()).collect::<Vec<_>>();
    let (cur_names, gold_names) = (suite_names(current), suite_names(golden));
    for name in &cur_names {
        if !gold_names.contains(name) {
            diff.added.push(format!("suite {name}"));
        }
    }
    for name in &gold_names {
        if !cur_names.contains(name) {
            diff.removed.push(format!("suite {name}"));
        }
    }
    for suite in &current.suites {
        let Some(gold) = golden.suite(&suite.name) else { continue };
        if suite.tolerance != gold.tolerance {
            diff.changed.push(format!("suite {} tolerance", suite.name));
        }
        let index = |recs: &[CheckRecord]| -> BTreeMap<String, CheckRecord> {
            recs.iter().map(|r| (record_key(r), r.clone())).collect()
        };
        let (cur, old) = (index(&suite.records), index(&gold.records));
        for (key, rec) in &cur {
            match old.get(key) {
                None => diff.added.push(key.clone()),
                Some(g) => {
                    for (field, a, b) in [
                        ("verdict", rec.verdict.as_str(), g.verdict.as_str()),
                        ("residual", rec.residual.as_str(), g.residual.as_str()),
                        ("lhs", rec.lhs.as_str(), g.lhs.as_str()),
                        ("rhs", rec.rhs.as_str(), g.rhs.as_str()),
                    ] {
                        if a != b {
                            diff.changed.push(format!("{key} {field}: {b} -> {a}"));
                        }
                    }
                }
            }
        }
        for key in old.keys() {
            if !cur.contains_key(key) {
                diff.removed.push(key.clone());
            }
        }
    }
    Ok(diff)
}
