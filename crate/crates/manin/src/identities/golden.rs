//! Pinned free-ring residuals.
//!
//! A golden file is JSON of the form
//! `{"check": .., "ring": .., "exact": bool, "components": {label: expr}}`.
//! Each expression is parsed in the ring of the run and compared with the
//! residual of the same label by canonical rendering. With `exact` the
//! residual may not contain any other label; otherwise unlisted labels are
//! unconstrained.

use super::Residuals;
use crate::error::{Error, Result};
use crate::ncpoly::Poly;
use crate::rings::Ring;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

#[derive(Clone, Debug, Deserialize)]
pub struct Golden {
    pub check: String,
    pub ring: String,
    #[serde(default)]
    pub exact: bool,
    pub components: BTreeMap<String, String>,
}

const BUILTIN: &[(&str, &str)] = &[
    ("newton_free_2", include_str!("../../golden/newton_free_2.json")),
    ("macmahon_free_2", include_str!("../../golden/macmahon_free_2.json")),
    ("cramer_free_2", include_str!("../../golden/cramer_free_2.json")),
    ("cramer_right_manin_2", include_str!("../../golden/cramer_right_manin_2.json")),
    ("cayley_hamilton_free_2", include_str!("../../golden/cayley_hamilton_free_2.json")),
    ("frobenius_free_2", include_str!("../../golden/frobenius_free_2.json")),
    ("det_multiplicativity_free_2", include_str!("../../golden/det_multiplicativity_free_2.json")),
    ("nogo_exp_det", include_str!("../../golden/nogo_exp_det.json")),
];

/// Text of a golden file shipped with the crate.
pub fn builtin_golden(key: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

pub(crate) fn has_golden(key: &str, dir: Option<&Path>) -> bool {
    dir.map(|d| d.join(format!("{key}.json")).is_file()).unwrap_or(false) || builtin_golden(key).is_some()
}

/// Load `key`, preferring `<dir>/<key>.json` over the shipped copy.
pub fn load(key: &str, dir: Option<&Path>) -> Result<Golden> {
    let text = match dir.map(|d| d.join(format!("{key}.json"))).filter(|p| p.is_file()) {
        Some(p) => std::fs::read_to_string(&p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?,
        None => builtin_golden(key)
            .ok_or_else(|| Error::Parse(format!("no golden file `{key}`")))?
            .to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("golden `{key}`: {e}")))
}

impl Golden {
    /// Canonical renderings of the pinned components.
    pub fn rendered(&self, ring: &Arc<Ring>) -> Result<BTreeMap<String, String>> {
        self.components
            .iter()
            .map(|(l, e)| Ok((l.clone(), Poly::parse(ring, e)?.render())))
            .collect()
    }

    pub fn matches(&self, residuals: &Residuals, ring: &Arc<Ring>) -> Result<bool> {
        let want = self.rendered(ring)?;
        let listed_ok = want.iter().all(|(l, r)| match residuals.get(l) {
            Some(got) => got == r,
            None => r == "0",
        });
        let extra = residuals.0.iter().any(|(l, _)| !want.contains_key(l));
        Ok(listed_ok && !(self.exact && extra))
    }
}
