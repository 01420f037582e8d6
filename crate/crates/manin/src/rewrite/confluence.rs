//! Bounded diamond test over overlap and inclusion ambiguities.

use super::RewriteSystem;
use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CriticalPair {
    pub word: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub bound: usize,
    pub ambiguities: usize,
    pub divergent: Vec<CriticalPair>,
    /// Set when rewriting itself failed, e.g. on the word-length cap.
    pub error: Option<String>,
}

impl ConfluenceReport {
    pub fn confluent(&self) -> bool {
        self.divergent.is_empty() && self.error.is_none()
    }
}

impl RewriteSystem {
    /// Resolve every ambiguity whose word has length at most `bound` both ways
    /// and list the pairs whose normal forms differ.
    ///
    /// Overlaps: a proper suffix of one left-hand side equals a proper prefix
    /// of another. Inclusions: one left-hand side occurs inside another, which
    /// covers two rules sharing a left-hand side.
    pub fn check_local_confluence(&self, bound: usize) -> ConfluenceReport {
        let bound = bound.max(3);
        let mut report = ConfluenceReport {
            bound,
            ambiguities: 0,
            divergent: Vec::new(),
            error: None,
        };
        let rules = self.rules();
        let mut cases: Vec<(Vec<u16>, usize, usize, usize, usize)> = Vec::new();
        for (i, r1) in rules.iter().enumerate() {
            let a = r1.lhs.as_slice();
            for (j, r2) in rules.iter().enumerate() {
                let b = r2.lhs.as_slice();
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] == b[..k] {
                        let mut w = a.to_vec();
                        w.extend_from_slice(&b[k..]);
                        if w.len() <= bound {
                            cases.push((w, i, 0, j, a.len() - k));
                        }
                    }
                }
                if i != j && b.len() <= a.len() && a.len() <= bound {
                    for pos in 0..=a.len() - b.len() {
                        if a[pos..pos + b.len()] == *b && (i < j || b.len() < a.len()) {
                            cases.push((a.to_vec(), i, 0, j, pos));
                        }
                    }
                }
            }
        }
        for (w, i, pi, j, pj) in cases {
            report.ambiguities += 1;
            let left = self.reduce_at(&w, pi, &rules[i]);
            let right = self.reduce_at(&w, pj, &rules[j]);
            match (left, right) {
                (Ok(l), Ok(r)) => {
                    if l != r {
                        report.divergent.push(CriticalPair {
                            word: self.render_word(&w),
                            left: self.render(&l),
                            right: self.render(&r),
                        });
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    report.error = Some(e.to_string());
                }
            }
        }
        report
    }
}
