use super::render::{parse_terms, render_terms};
use super::word::{Gen, Mono, Word};
use super::Q;
use crate::error::{Error, Result};
use crate::rewrite::Acc;
use crate::rings::Ring;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A polynomial in normal form over a ring.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: BTreeMap<Mono, Q>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.ring.name(), self.render())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(ring: &Arc<Ring>, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::new(Word::empty(), 0), c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn int(ring: &Arc<Ring>, n: i64) -> Self {
        Self::scalar(ring, super::q_int(n))
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::scalar(ring, Q::one())
    }

    /// The generator with the given display name.
    pub fn gen(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let g = ring.sys().generator(name)?;
        Self::word(ring, &[g])
    }

    /// The normal form of a single word.
    pub fn word(ring: &Arc<Ring>, w: &[Gen]) -> Result<Self> {
        let m = Mono::new(Word::from_slice(w), 0);
        Self::from_terms(ring, [(m, Q::one())])
    }

    /// The central parameter q raised to `k`.
    pub fn q_power(ring: &Arc<Ring>, k: i32) -> Result<Self> {
        if !ring.sys().has_q() {
            return Err(Error::NoQ(ring.name().to_string()));
        }
        let mut terms = BTreeMap::new();
        terms.insert(Mono::new(Word::empty(), k), Q::one());
        Ok(Poly {
            ring: ring.clone(),
            terms,
        })
    }

    /// Build from arbitrary terms and bring them to normal form.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Mono, Q)>,
    {
        let terms: Vec<(Mono, Q)> = terms.into_iter().collect();
        if terms.iter().any(|(m, _)| m.q != 0) && !ring.sys().has_q() {
            return Err(Error::NoQ(ring.name().to_string()));
        }
        let nf = ring.sys().normal_form(terms.iter().map(|(m, c)| (m, c)))?;
        Ok(Poly {
            ring: ring.clone(),
            terms: nf,
        })
    }

    /// Parse the canonical rendering.
    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<Self> {
        let terms = parse_terms(s, ring.sys().index())?;
        Self::from_terms(ring, terms)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest word length, or `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.word.len()).max()
    }

    /// The rational value if this is a scalar (no word, no q).
    pub fn as_scalar(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.word.is_empty() && m.q == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&Mono::new(Word::empty(), 0))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                self.ring.name().to_string(),
                other.ring.name().to_string(),
            ))
        }
    }

    fn with_terms(&self, terms: BTreeMap<Mono, Q>) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Ok(self.with_terms(terms))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.with_terms(self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        self.with_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let sys = self.ring.sys();
        let mut acc = Acc::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                if m2.word.is_empty() {
                    acc.add(Mono::new(m1.word.clone(), m1.q + m2.q), c);
                    continue;
                }
                for (w, wq, wc) in sys.concat(&m1.word, m2.word.as_slice())? {
                    acc.add(Mono::new(w, wq + m1.q + m2.q), wc * &c);
                }
            }
        }
        Ok(self.with_terms(acc.into_map()))
    }

    pub fn pow(&self, k: u32) -> Result<Poly> {
        let mut out = Poly::one(&self.ring);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `pq − qp`.
    pub fn commutator(&self, other: &Poly) -> Result<Poly> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `pq + qp`.
    pub fn anticommutator(&self, other: &Poly) -> Result<Poly> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    /// Re-express in another ring, matching generators by display name.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Poly> {
        if self.ring.same(target) {
            return Ok(self.clone());
        }
        let names = self.ring.sys().names();
        let map: Vec<Gen> = names
            .iter()
            .map(|n| target.sys().generator(n))
            .collect::<Result<_>>()?;
        let terms = self.terms.iter().map(|(m, c)| {
            let w: Vec<Gen> = m.word.as_slice().iter().map(|&g| map[g as usize]).collect();
            (Mono::new(Word::from_slice(&w), m.q), c.clone())
        });
        Poly::from_terms(target, terms)
    }

    /// Replace q by 1.
    pub fn at_q_one(&self) -> Poly {
        let mut acc = Acc::default();
        for (m, c) in &self.terms {
            acc.add(Mono::new(m.word.clone(), 0), c.clone());
        }
        self.with_terms(acc.into_map())
    }

    pub fn render(&self) -> String {
        render_terms(self.ring.sys().names(), self.terms.iter())
    }
}
