//! Text and JSON reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::SuiteConfig;
use crate::error::{Error, Result};
use crate::suites::SuiteResult;
use crate::verdict::{Status, Verdict};

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub suite: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: Value,
    pub verdicts: Vec<ReportEntry>,
}

impl Report {
    pub fn new(cfg: &SuiteConfig, results: &[SuiteResult]) -> Report {
        let verdicts = results
            .iter()
            .flat_map(|r| r.verdicts.iter().map(|v| ReportEntry { suite: r.suite.name().to_string(), verdict: v.clone() }))
            .collect();
        Report { version: REPORT_VERSION.to_string(), config: cfg.echo(), verdicts }
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|e| e.verdict.is_pass())
    }

    /// `(suites passed, suites run)`; a suite passes when all its verdicts do.
    pub fn suite_counts(&self) -> (usize, usize) {
        let mut order: Vec<(&str, bool)> = Vec::new();
        for e in &self.verdicts {
            match order.iter_mut().find(|(s, _)| *s == e.suite) {
                Some((_, ok)) => *ok &= e.verdict.is_pass(),
                None => order.push((&e.suite, e.verdict.is_pass())),
            }
        }
        (order.iter().filter(|(_, ok)| *ok).count(), order.len())
    }

    pub fn summary(&self) -> String {
        let (passed, total) = self.suite_counts();
        let vp = self.verdicts.iter().filter(|e| e.verdict.is_pass()).count();
        format!("{passed}/{total} suites passed ({vp}/{} verdicts)", self.verdicts.len())
    }

    /// Copy with every timing zeroed, for determinism comparisons.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for e in &mut r.verdicts {
            e.verdict.seconds = 0.0;
        }
        r
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("report JSON: {e}")))
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => emit_text(report),
    }
}

fn emit_text(report: &Report) -> String {
    let mut out = String::new();
    let mut current: Option<&str> = None;
    for e in &report.verdicts {
        if current != Some(e.suite.as_str()) {
            if current.is_some() {
                out.push('\n');
            }
            let _ = writeln!(out, "== {} ==", e.suite);
            current = Some(&e.suite);
        }
        let v = &e.verdict;
        let _ = write!(out, "{:<7} {}", status_tag(v.status), v.label);
        if let Some(r) = v.residual {
            let _ = write!(out, "  residual={r:.3e}");
        }
        let _ = writeln!(out, "  ({:.3}s)", v.seconds);
        if let Some(w) = &v.witness {
            let _ = writeln!(out, "        {w}");
        }
    }
    if !report.verdicts.is_empty() {
        out.push('\n');
    }
    let _ = writeln!(out, "{}", report.summary());
    out
}

fn status_tag(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::InconclusiveUnderRestriction => "INCONCL",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let v1 = Verdict::pass("T2").with_residual(1.25e-17).with_detail("n", json!(3));
        let mut v2 = Verdict::fail("jacobi:mutant", "triple (K1, H, J3)");
        v2.seconds = 0.123456789;
        Report {
            version: REPORT_VERSION.into(),
            config: json!({ "seeds": { "master": 1 } }),
            verdicts: vec![
                ReportEntry { suite: "schwinger".into(), verdict: v1 },
                ReportEntry { suite: "algebra".into(), verdict: v2 },
            ],
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let text = emit_report(&r, Format::Json);
        assert_eq!(Report::from_json(&text).unwrap(), r);
    }

    #[test]
    fn text_groups_and_summarizes() {
        let text = emit_report(&sample(), Format::Text);
        assert!(text.contains("== schwinger =="));
        assert!(text.contains("FAIL    jacobi:mutant"));
        assert!(text.contains("triple (K1, H, J3)"));
        assert!(text.trim_end().ends_with("1/2 suites passed (1/2 verdicts)"));
    }

    #[test]
    fn empty_report_is_success() {
        let r = Report { version: REPORT_VERSION.into(), config: json!({}), verdicts: vec![] };
        assert!(r.all_pass());
        assert_eq!(r.summary(), "0/0 suites passed (0/0 verdicts)");
    }
}
