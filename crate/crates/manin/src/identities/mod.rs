//! Identity checkers.
//!
//! Every checker builds an instance, computes both sides in normal form and
//! returns the nonzero parts of the difference as labelled residuals. A
//! [`Report`] pairs those residuals with an expectation: zero on Manin rings,
//! a pinned golden residual where the free-ring expansion is known, or
//! merely nonzero for counterexamples.

mod basic;
mod capelli;
mod fuzz;
mod golden;
mod leningrad;
mod numeric;
mod registry;
mod series;

pub use fuzz::{fuzz, FuzzConfig, INVARIANTS as FUZZ_INVARIANTS, KINDS as FUZZ_KINDS};
pub use golden::{builtin_golden, Golden};
pub use registry::{find_check, registry, run_check, run_suite, CheckCtx, CheckDef, SuiteConfig};

use crate::error::Result;
use crate::ncmatrix::{Alg, Matrix};
use crate::rings::Ring;
use serde::Serialize;
use serde_json::{Map, Value};
use std::fmt;
use std::sync::Arc;

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "zero")]
    Zero,
    #[serde(rename = "nonzero-expected")]
    NonzeroExpected,
    #[serde(rename = "golden-match")]
    GoldenMatch,
    #[serde(rename = "golden-mismatch")]
    GoldenMismatch,
    #[serde(rename = "nonzero-UNEXPECTED")]
    NonzeroUnexpected,
    #[serde(rename = "zero-UNEXPECTED")]
    ZeroUnexpected,
    #[serde(rename = "error")]
    Error,
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(self, Verdict::Zero | Verdict::NonzeroExpected | Verdict::GoldenMatch)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Zero => "zero",
            Verdict::NonzeroExpected => "nonzero-expected",
            Verdict::GoldenMatch => "golden-match",
            Verdict::GoldenMismatch => "golden-mismatch",
            Verdict::NonzeroUnexpected => "nonzero-UNEXPECTED",
            Verdict::ZeroUnexpected => "zero-UNEXPECTED",
            Verdict::Error => "error",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a check expects of its residuals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    Zero,
    Nonzero,
    /// Compare against the golden file with this key.
    Golden(String),
}

/// Labelled residual renderings, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Residuals(pub Vec<(String, String)>);

impl Residuals {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record the nonzero components of `x` under `label`.
    pub fn push<T: Alg>(&mut self, label: &str, x: &T) {
        for (sub, r) in x.components() {
            self.0.push((join_label(label, &sub), r));
        }
    }

    /// Record the nonzero entries of a matrix, labelled `label(i,j)`.
    pub fn push_matrix<T: Alg>(&mut self, label: &str, m: &Matrix<T>) {
        self.0.extend(m.residuals(label));
    }

    /// Record already-labelled residuals, e.g. from `is_manin`.
    pub fn push_list<T: Alg>(&mut self, label: &str, list: &[(String, T)]) {
        for (l, x) in list {
            self.push(&join_label(label, l), x);
        }
    }

    pub fn push_raw(&mut self, label: &str, text: String) {
        self.0.push((label.to_string(), text));
    }

    pub fn extend(&mut self, other: Residuals) {
        self.0.extend(other.0);
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.0.iter().find(|(l, _)| l == label).map(|(_, r)| r.as_str())
    }

    pub fn lines(&self) -> Vec<String> {
        self.0.iter().map(|(l, r)| format!("{l}: {r}")).collect()
    }
}

pub(crate) fn join_label(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_string(),
        (_, true) => a.to_string(),
        _ => format!("{a} {b}"),
    }
}

/// What a checker hands back before the verdict is decided.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub ring: String,
    /// Ring in which golden expressions are parsed.
    pub ring_ref: Arc<Ring>,
    pub params: Map<String, Value>,
    pub residuals: Residuals,
    pub expect: Expect,
}

impl Outcome {
    pub fn new(ring: &Arc<Ring>, expect: Expect) -> Self {
        Outcome {
            ring: ring.name().to_string(),
            ring_ref: ring.clone(),
            params: Map::new(),
            residuals: Residuals::new(),
            expect,
        }
    }

    pub fn param(mut self, k: &str, v: impl Into<Value>) -> Self {
        self.params.insert(k.to_string(), v.into());
        self
    }
}

/// A finished check.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub ring: String,
    pub params: Map<String, Value>,
    pub verdict: Verdict,
    pub residuals: Vec<String>,
    pub millis: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// Key used to order reports: name, then parameters.
    pub fn sort_key(&self) -> (String, String) {
        (self.name.clone(), Value::Object(self.params.clone()).to_string())
    }

    /// One line per report plus indented residuals.
    pub fn to_text(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut s = format!("{:<28} {:<20} [{}] {}", self.name, self.verdict.as_str(), params.join(" "), self.ring);
        if let Some(ms) = self.millis {
            s.push_str(&format!(" ({ms} ms)"));
        }
        for r in &self.residuals {
            s.push_str("\n    ");
            s.push_str(r);
        }
        s
    }
}

/// Decide the verdict for an outcome.
pub fn judge(name: &str, out: Outcome, golden_dir: Option<&std::path::Path>, millis: Option<u64>) -> Result<Report> {
    let verdict = match &out.expect {
        Expect::Zero => {
            if out.residuals.is_empty() {
                Verdict::Zero
            } else {
                Verdict::NonzeroUnexpected
            }
        }
        Expect::Nonzero => {
            if out.residuals.is_empty() {
                Verdict::ZeroUnexpected
            } else {
                Verdict::NonzeroExpected
            }
        }
        Expect::Golden(key) => {
            let g = golden::load(key, golden_dir)?;
            if g.matches(&out.residuals, &out.ring_ref)? {
                Verdict::GoldenMatch
            } else {
                Verdict::GoldenMismatch
            }
        }
    };
    Ok(Report {
        name: name.to_string(),
        ring: out.ring,
        params: out.params,
        verdict,
        residuals: out.residuals.lines(),
        millis,
    })
}
