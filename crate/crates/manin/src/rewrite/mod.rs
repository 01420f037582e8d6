//! Straightening rewrite systems and normal forms.
//!
//! A system is a generator alphabet with its index order and a list of rules
//! `lhs -> rhs`. Every word of a right-hand side must be strictly smaller than
//! the left-hand side in the length-lexicographic order, which makes
//! rewriting terminate. Normal forms are built letter by letter: if `u` is
//! already irreducible, any redex of `u·x` is a suffix, so only suffixes need
//! to be tested. Results are memoized per system.

mod confluence;

pub use confluence::{ConfluenceReport, CriticalPair};

use crate::error::{Error, Result};
use crate::ncpoly::render::render_terms;
use crate::ncpoly::{Gen, Mono, Word, Q};
use num_traits::{One, Zero};
use parking_lot::RwLock;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Default cap on word length, overridable through `MANIN_WORD_CAP`.
pub const DEFAULT_WORD_CAP: usize = 24;

pub fn word_cap_from_env() -> usize {
    std::env::var("MANIN_WORD_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_WORD_CAP)
}

/// A term of a normal form: word, q exponent, coefficient.
pub type Term = (Word, i32, Q);

/// Accumulator keyed by monomial; zero coefficients are dropped on output.
#[derive(Default)]
pub(crate) struct Acc(BTreeMap<Mono, Q>);

impl Acc {
    pub(crate) fn add(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn into_map(self) -> BTreeMap<Mono, Q> {
        self.0
    }

    fn into_terms(self) -> Vec<Term> {
        self.0.into_iter().map(|(m, c)| (m.word, m.q, c)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Vec<Term>,
}

impl Rule {
    pub fn new(lhs: &[Gen], rhs: Vec<(Vec<Gen>, i32, Q)>) -> Self {
        Rule {
            lhs: Word::from_slice(lhs),
            rhs: rhs
                .into_iter()
                .map(|(w, q, c)| (Word::from_slice(&w), q, c))
                .collect(),
        }
    }

    /// `lhs -> lhs'` with coefficient one, the common commutation shape.
    pub fn swap(a: Gen, b: Gen) -> Self {
        Rule::new(&[a, b], vec![(vec![b, a], 0, Q::one())])
    }
}

pub struct RewriteSystem {
    names: Vec<String>,
    index: HashMap<String, Gen>,
    rules: Vec<Rule>,
    by_lhs: HashMap<Word, usize>,
    max_lhs: usize,
    q: bool,
    cap: usize,
    memo: RwLock<HashMap<Word, Arc<Vec<Term>>>>,
}

impl std::fmt::Debug for RewriteSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RewriteSystem")
            .field("generators", &self.names)
            .field("rules", &self.rules.len())
            .field("q", &self.q)
            .finish()
    }
}

impl RewriteSystem {
    /// Build a system. Fails if a rule is not strictly decreasing, mentions an
    /// unknown generator, or uses q in a system without q.
    pub fn new(names: Vec<String>, rules: Vec<Rule>, q: bool) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i as Gen).is_some() {
                return Err(Error::Preset(format!("duplicate generator name `{n}`")));
            }
        }
        let g = names.len() as Gen;
        let mut by_lhs = HashMap::new();
        let mut max_lhs = 0;
        for (i, r) in rules.iter().enumerate() {
            let shown = || {
                let m = Mono::new(r.lhs.clone(), 0);
                render_terms(&names, [(&m, &Q::one())])
            };
            if r.lhs.is_empty() {
                return Err(Error::RuleOrder("empty left-hand side".into()));
            }
            let all_words = std::iter::once(&r.lhs).chain(r.rhs.iter().map(|t| &t.0));
            if all_words.flat_map(|w| w.as_slice()).any(|&x| x >= g) {
                return Err(Error::Preset(format!("rule {} uses an unknown generator", shown())));
            }
            for (w, qe, _) in &r.rhs {
                if *w >= r.lhs {
                    return Err(Error::RuleOrder(shown()));
                }
                if *qe != 0 && !q {
                    return Err(Error::NoQ(shown()));
                }
            }
            by_lhs.entry(r.lhs.clone()).or_insert(i);
            max_lhs = max_lhs.max(r.lhs.len());
        }
        Ok(RewriteSystem {
            names,
            index,
            rules,
            by_lhs,
            max_lhs,
            q,
            cap: word_cap_from_env(),
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self) -> &HashMap<String, Gen> {
        &self.index
    }

    pub fn generator(&self, name: &str) -> Result<Gen> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn has_q(&self) -> bool {
        self.q
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// True if no left-hand side occurs as a factor of `w`.
    pub fn is_normal(&self, w: &[Gen]) -> bool {
        (0..w.len()).all(|end| {
            (1..=self.max_lhs.min(end + 1))
                .all(|l| !self.by_lhs.contains_key(&Word::from_slice(&w[end + 1 - l..=end])))
        })
    }

    fn check_cap(&self, len: usize) -> Result<()> {
        if len > self.cap {
            Err(Error::WordCap { len, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Normal form of `u·x` where `u` is irreducible.
    fn append(&self, u: &Word, x: Gen) -> Result<Arc<Vec<Term>>> {
        let w = u.pushed(x);
        self.check_cap(w.len())?;
        if let Some(hit) = self.memo.read().get(&w) {
            return Ok(hit.clone());
        }
        let n = w.len();
        let mut redex = None;
        for l in 1..=self.max_lhs.min(n) {
            if let Some(&ri) = self.by_lhs.get(&Word::from_slice(&w.as_slice()[n - l..])) {
                redex = Some((l, ri));
                break;
            }
        }
        let result = match redex {
            None => vec![(w.clone(), 0, Q::one())],
            Some((l, ri)) => {
                let prefix = Word::from_slice(&w.as_slice()[..n - l]);
                let mut acc = Acc::default();
                for (rw, rq, rc) in &self.rules[ri].rhs {
                    for (t, tq, tc) in self.concat(&prefix, rw.as_slice())? {
                        acc.add(Mono::new(t, tq + rq), tc * rc);
                    }
                }
                acc.into_terms()
            }
        };
        let result = Arc::new(result);
        self.memo.write().insert(w, result.clone());
        Ok(result)
    }

    /// Normal form of `u·v` where `u` is irreducible and `v` arbitrary.
    pub fn concat(&self, u: &Word, v: &[Gen]) -> Result<Vec<Term>> {
        self.check_cap(u.len() + v.len())?;
        let mut cur: Vec<Term> = vec![(u.clone(), 0, Q::one())];
        for &x in v {
            if cur.len() == 1 && cur[0].1 == 0 && cur[0].2.is_one() {
                let next = self.append(&cur[0].0, x)?;
                cur = next.as_ref().clone();
                continue;
            }
            let mut acc = Acc::default();
            for (w, wq, wc) in &cur {
                for (t, tq, tc) in self.append(w, x)?.iter() {
                    acc.add(Mono::new(t.clone(), wq + tq), wc * tc);
                }
            }
            cur = acc.into_terms();
        }
        Ok(cur)
    }

    /// Normal form of an arbitrary word.
    pub fn normal_form_word(&self, w: &[Gen]) -> Result<Vec<Term>> {
        self.concat(&Word::empty(), w)
    }

    /// Normal form of a linear combination of monomials.
    pub fn normal_form<'a, I>(&self, terms: I) -> Result<BTreeMap<Mono, Q>>
    where
        I: IntoIterator<Item = (&'a Mono, &'a Q)>,
    {
        let mut acc = Acc::default();
        for (m, c) in terms {
            for (t, tq, tc) in self.normal_form_word(m.word.as_slice())? {
                acc.add(Mono::new(t, tq + m.q), tc * c);
            }
        }
        Ok(acc.into_map())
    }

    /// Apply one specific rule at a given position, then normalize.
    fn reduce_at(&self, w: &[Gen], pos: usize, rule: &Rule) -> Result<BTreeMap<Mono, Q>> {
        let l = rule.lhs.len();
        let mut acc = Acc::default();
        for (rw, rq, rc) in &rule.rhs {
            let mut word = w[..pos].to_vec();
            word.extend_from_slice(rw.as_slice());
            word.extend_from_slice(&w[pos + l..]);
            for (t, tq, tc) in self.normal_form_word(&word)? {
                acc.add(Mono::new(t, tq + rq), tc * rc);
            }
        }
        Ok(acc.into_map())
    }

    pub fn render(&self, terms: &BTreeMap<Mono, Q>) -> String {
        render_terms(&self.names, terms.iter())
    }

    pub fn render_word(&self, w: &[Gen]) -> String {
        w.iter()
            .map(|&g| self.names[g as usize].as_str())
            .collect::<Vec<_>>()
            .join("·")
    }

    /// Number of irreducible words of each length up to `max_len`.
    pub fn graded_dimensions(&self, max_len: usize) -> Vec<usize> {
        let g = self.names.len() as Gen;
        let mut layer: Vec<Vec<Gen>> = vec![vec![]];
        let mut dims = vec![1];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for x in 0..g {
                    let mut v = w.clone();
                    v.push(x);
                    if self.is_normal(&v) {
                        next.push(v);
                    }
                }
            }
            dims.push(next.len());
            layer = next;
        }
        dims
    }
}
