//! Plain-text ring configuration and custom rule files.
//!
//! A ring config is a list of `key = value` lines:
//!
//! ```text
//! preset = manin_generic
//! n = 3
//! m = 3
//! q = off
//! ```
//!
//! A rule file declares its generators and then one `lhs -> rhs` rule per
//! line, both sides in the canonical polynomial rendering:
//!
//! ```text
//! name = weyl-1
//! gens = x d
//! d·x -> x·d + 1
//! ```
//!
//! `#` starts a comment in both formats.

use crate::error::{Error, Result};
use crate::ncpoly::render::parse_terms;
use crate::rewrite::{RewriteSystem, Rule};
use crate::rings::{self, Ring};
use num_traits::One;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = strip(line);
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", no + 1)))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::Parse(format!("line {}: duplicate key `{}`", no + 1, k.trim())));
        }
    }
    Ok(out)
}

fn parse_flag(v: &str) -> Result<bool> {
    match v {
        "on" | "true" | "yes" | "1" => Ok(true),
        "off" | "false" | "no" | "0" => Ok(false),
        other => Err(Error::Parse(format!("`{other}` is not on/off"))),
    }
}

/// A parsed ring configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingConfig {
    pub preset: String,
    pub params: Vec<usize>,
    pub q: bool,
}

impl RingConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let kv = key_values(text)?;
        let mut preset = None;
        let mut n = None;
        let mut m = None;
        let mut q = false;
        for (k, v) in &kv {
            let num = || v.parse::<usize>().map_err(|_| Error::Parse(format!("`{k}` must be a positive integer")));
            match k.as_str() {
                "preset" => preset = Some(v.clone()),
                "n" => n = Some(num()?),
                "m" => m = Some(num()?),
                "q" => q = parse_flag(v)?,
                other => return Err(Error::Parse(format!("unknown key `{other}`"))),
            }
        }
        let preset = preset.ok_or_else(|| Error::Parse("missing `preset`".into()))?;
        let params = n.into_iter().chain(m).collect();
        Ok(RingConfig { preset, params, q })
    }

    /// Build the ring. `q = on` selects the q-deformed counterpart.
    pub fn build(&self) -> Result<Arc<Ring>> {
        if !self.q {
            return rings::preset(&self.preset, &self.params);
        }
        let name = match self.preset.as_str() {
            "manin_generic" | "manin" | "q_manin_generic" => "q_manin_generic",
            "commutative" | "q_poly" => "q_poly",
            "grassmann" | "q_grassmann" => "q_grassmann",
            "fun_q" => "fun_q",
            other => return Err(Error::Preset(format!("`{other}` has no q-deformation"))),
        };
        rings::preset(name, &self.params)
    }
}

/// Parse and build a ring configuration.
pub fn load_ring_config(text: &str) -> Result<Arc<Ring>> {
    RingConfig::parse(text)?.build()
}

/// A rule file before the confluence test.
#[derive(Debug)]
pub struct RuleFile {
    pub name: String,
    pub system: RewriteSystem,
}

/// Parse a rule file into a rewrite system without testing confluence.
pub fn parse_rule_file(text: &str) -> Result<RuleFile> {
    let mut name = "custom".to_string();
    let mut gens: Option<Vec<String>> = None;
    let mut q = false;
    let mut rules_src = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = strip(line);
        if line.is_empty() {
            continue;
        }
        if let Some((l, r)) = line.split_once("->") {
            rules_src.push((no + 1, l.trim().to_string(), r.trim().to_string()));
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected a rule or `key = value`", no + 1)))?;
        match k.trim() {
            "name" => name = v.trim().to_string(),
            "gens" => gens = Some(v.split_whitespace().map(str::to_string).collect()),
            "q" => q = parse_flag(v.trim())?,
            other => return Err(Error::Parse(format!("line {}: unknown key `{other}`", no + 1))),
        }
    }
    let gens = gens.ok_or_else(|| Error::Parse("missing `gens = ...` line".into()))?;
    let index: HashMap<String, u16> = gens.iter().enumerate().map(|(i, g)| (g.clone(), i as u16)).collect();
    let mut rules = Vec::with_capacity(rules_src.len());
    for (no, l, r) in rules_src {
        let lhs = parse_terms(&l, &index)?;
        let [(mono, c)] = lhs.as_slice() else {
            return Err(Error::Parse(format!("line {no}: the left side must be a single word")));
        };
        if !c.is_one() || mono.q != 0 {
            return Err(Error::Parse(format!("line {no}: the left side must have coefficient 1")));
        }
        let rhs = parse_terms(&r, &index)?
            .into_iter()
            .map(|(m, c)| (m.word.as_slice().to_vec(), m.q, c))
            .collect();
        rules.push(Rule::new(mono.word.as_slice(), rhs));
    }
    Ok(RuleFile {
        name,
        system: RewriteSystem::new(gens, rules, q)?,
    })
}

/// Parse a rule file and build a ring from it; fails unless the system
/// passes the confluence self-test.
pub fn load_rule_file(text: &str) -> Result<Arc<Ring>> {
    let f = parse_rule_file(text)?;
    let names = f.system.names().to_vec();
    let rules = f.system.rules().to_vec();
    Ring::new(f.name, names, rules, f.system.has_q())
}
