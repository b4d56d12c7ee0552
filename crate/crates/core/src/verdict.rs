use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE-UNDER-RESTRICTION")]
    InconclusiveUnderRestriction,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::InconclusiveUnderRestriction => "INCONCLUSIVE-UNDER-RESTRICTION",
        };
        f.write_str(s)
    }
}

/// Outcome of one check, labelled by the axiom or theorem it exercises
/// (`T2`, `S2-counterexample`, `S5-nogo`, ...).
///
/// A failing verdict always carries a witness or a residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub label: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
    pub seconds: f64,
}

impl Verdict {
    pub fn pass(label: impl Into<String>) -> Self {
        Verdict {
            label: label.into(),
            status: Status::Pass,
            residual: None,
            witness: None,
            details: BTreeMap::new(),
            seconds: 0.0,
        }
    }

    pub fn fail(label: impl Into<String>, witness: impl Into<String>) -> Self {
        Verdict { status: Status::Fail, witness: Some(witness.into()), ..Verdict::pass(label) }
    }

    pub fn inconclusive(label: impl Into<String>, reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::InconclusiveUnderRestriction,
            witness: Some(reason.into()),
            ..Verdict::pass(label)
        }
    }

    /// Pass when `ok`, otherwise fail with `witness`.
    pub fn check(label: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::pass(label)
        } else {
            Verdict::fail(label, witness())
        }
    }

    pub fn with_residual(mut self, r: f64) -> Self {
        self.residual = Some(r);
        self
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_detail(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.details.insert(key.into(), value.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.status, self.label)?;
        if let Some(r) = self.residual {
            write!(f, " residual={r:.3e}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}
