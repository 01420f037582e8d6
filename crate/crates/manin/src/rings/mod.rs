//! Named ring presets, tensor products and the symplectic Poisson bracket.
//!
//! Each preset is a rewrite system over a fixed alphabet. Construction runs
//! the bounded confluence self-test and refuses systems that fail it.
//! Presets are cached by name so that normal-form memo tables are shared.

mod examples;
mod poisson;

pub use examples::{example_matrix, ExampleKind};
pub use poisson::{poisson_bracket, poisson_bracket_series, PoissonTable};

use crate::error::{Error, Result};
use crate::ncpoly::{Gen, Q};
use crate::rewrite::{ConfluenceReport, RewriteSystem, Rule};
use num_traits::One;
use parking_lot::Mutex;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

/// Overlap bound used by the construction-time self-test.
pub const SELF_TEST_BOUND: usize = 3;

#[derive(Debug)]
pub struct Ring {
    name: String,
    sys: RewriteSystem,
    poisson: Option<PoissonTable>,
}

impl Ring {
    /// Build a ring and run the confluence self-test.
    pub fn new(name: impl Into<String>, names: Vec<String>, rules: Vec<Rule>, q: bool) -> Result<Arc<Ring>> {
        let ring = Self::unchecked(name, names, rules, q)?;
        let report = ring.sys.check_local_confluence(SELF_TEST_BOUND);
        if !report.confluent() {
            return Err(Error::NotConfluent {
                name: ring.name.clone(),
                divergent: report.divergent.len().max(1),
            });
        }
        Ok(Arc::new(ring))
    }

    fn unchecked(name: impl Into<String>, names: Vec<String>, rules: Vec<Rule>, q: bool) -> Result<Ring> {
        Ok(Ring {
            name: name.into(),
            sys: RewriteSystem::new(names, rules, q)?,
            poisson: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sys(&self) -> &RewriteSystem {
        &self.sys
    }

    pub fn poisson(&self) -> Option<&PoissonTable> {
        self.poisson.as_ref()
    }

    /// Same ring: identical object, or identical name (names fix the presentation).
    pub fn same(&self, other: &Ring) -> bool {
        std::ptr::eq(self, other) || self.name == other.name
    }

    pub fn confluence(&self, bound: usize) -> ConfluenceReport {
        self.sys.check_local_confluence(bound)
    }

    /// Generator index by name.
    pub fn g(&self, name: &str) -> Result<Gen> {
        self.sys.generator(name)
    }
}

fn cache() -> &'static Mutex<HashMap<String, Arc<Ring>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Ring>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached<F: FnOnce() -> Result<Arc<Ring>>>(key: &str, build: F) -> Result<Arc<Ring>> {
    if let Some(r) = cache().lock().get(key) {
        return Ok(r.clone());
    }
    let ring = build()?;
    Ok(cache().lock().entry(key.to_string()).or_insert(ring).clone())
}

/// Names `S[i,j]` for an `n×m` array, row-major.
pub fn matrix_names(sym: &str, n: usize, m: usize) -> Vec<String> {
    let mut v = Vec::with_capacity(n * m);
    for i in 1..=n {
        for j in 1..=m {
            v.push(format!("{sym}[{i},{j}]"));
        }
    }
    v
}

fn numbered(sym: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{sym}{i}")).collect()
}

fn commuting_rules(gens: &[Gen]) -> Vec<Rule> {
    let mut rules = Vec::new();
    for (a, &x) in gens.iter().enumerate() {
        for &y in &gens[a + 1..] {
            rules.push(Rule::swap(y, x));
        }
    }
    rules
}

fn suffix(sym: &str) -> String {
    if sym == "M" {
        String::new()
    } else {
        format!("[{sym}]")
    }
}

/// Free algebra on the given generator names.
pub fn free_on(label: &str, names: Vec<String>) -> Result<Arc<Ring>> {
    cached(&format!("free({label})"), || Ring::new(format!("free({label})"), names, vec![], false))
}

/// Free algebra on the entries of an `n×m` matrix `M`.
pub fn free(n: usize, m: usize) -> Result<Arc<Ring>> {
    free_sym("M", n, m)
}

pub fn free_sym(sym: &str, n: usize, m: usize) -> Result<Arc<Ring>> {
    let key = format!("free{}({n},{m})", suffix(sym));
    cached(&key, || Ring::new(key.clone(), matrix_names(sym, n, m), vec![], false))
}

/// Polynomial algebra on the given names.
pub fn commutative_on(label: &str, names: Vec<String>) -> Result<Arc<Ring>> {
    let key = format!("commutative({label})");
    cached(&key, || {
        let gens: Vec<Gen> = (0..names.len() as Gen).collect();
        Ring::new(key.clone(), names, commuting_rules(&gens), false)
    })
}

pub fn commutative(n: usize, m: usize) -> Result<Arc<Ring>> {
    commutative_sym("M", n, m)
}

pub fn commutative_sym(sym: &str, n: usize, m: usize) -> Result<Arc<Ring>> {
    let key = format!("commutative{}({n},{m})", suffix(sym));
    cached(&key, || {
        let names = matrix_names(sym, n, m);
        let gens: Vec<Gen> = (0..names.len() as Gen).collect();
        Ring::new(key.clone(), names, commuting_rules(&gens), false)
    })
}

/// Entries from different rows commute; no relation inside a row.
pub fn cartier_foata(n: usize, m: usize) -> Result<Arc<Ring>> {
    let key = format!("cartier_foata({n},{m})");
    cached(&key, || {
        let id = |i: usize, j: usize| (i * m + j) as Gen;
        let mut rules = Vec::new();
        for k in 0..n {
            for i in 0..k {
                for l in 0..m {
                    for j in 0..m {
                        rules.push(Rule::swap(id(k, l), id(i, j)));
                    }
                }
            }
        }
        Ring::new(key.clone(), matrix_names("M", n, m), rules, false)
    })
}

/// The algebra generated by the entries of a generic `n×m` Manin matrix.
///
/// With generators ordered by (row, column), for `i<k`, `j<l`:
/// `M_kj·M_ij → M_ij·M_kj` and
/// `M_kl·M_ij → M_ij·M_kl − M_kj·M_il + M_il·M_kj`.
pub fn manin_generic(n: usize, m: usize) -> Result<Arc<Ring>> {
    manin_generic_sym("M", n, m)
}

pub fn manin_generic_sym(sym: &str, n: usize, m: usize) -> Result<Arc<Ring>> {
    let key = format!("manin_generic{}({n},{m})", suffix(sym));
    cached(&key, || {
        Ring::new(key.clone(), matrix_names(sym, n, m), manin_rules(n, m, 0), false)
    })
}

/// Manin rules on an `n×m` block of generators starting at `offset`.
fn manin_rules(n: usize, m: usize, offset: usize) -> Vec<Rule> {
    let id = |i: usize, j: usize| (offset + i * m + j) as Gen;
    let one = Q::one();
    let mut rules = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..m {
                rules.push(Rule::swap(id(k, j), id(i, j)));
            }
            for j in 0..m {
                for l in j + 1..m {
                    rules.push(Rule::new(
                        &[id(k, l), id(i, j)],
                        vec![
                            (vec![id(i, j), id(k, l)], 0, one.clone()),
                            (vec![id(k, j), id(i, l)], 0, -one.clone()),
                            (vec![id(i, l), id(k, j)], 0, one.clone()),
                        ],
                    ));
                }
            }
        }
    }
    rules
}

/// Entries of a generic matrix whose transpose is Manin.
pub fn manin_generic_transpose(n: usize, m: usize) -> Result<Arc<Ring>> {
    let key = format!("manin_generic_transpose({n},{m})");
    cached(&key, || {
        // Rules of the m×n Manin matrix T = M^t, written in M's names.
        let id = |i: usize, j: usize| (i * m + j) as Gen;
        let one = Q::one();
        let mut rules = Vec::new();
        // Column commutativity of T: row commutativity of M.
        for r in 0..n {
            for a in 0..m {
                for b in a + 1..m {
                    rules.push(Rule::swap(id(r, b), id(r, a)));
                }
            }
        }
        // [T_ij, T_kl] = [T_kj, T_il] for i<k, j<l, i.e.
        // [M_ji, M_lk] = [M_jk, M_li] for rows j<l, columns i<k.
        for j in 0..n {
            for l in j + 1..n {
                for i in 0..m {
                    for k in i + 1..m {
                        // M_lk·M_ji → M_ji·M_lk − M_jk·M_li + M_li·M_jk
                        rules.push(Rule::new(
                            &[id(l, k), id(j, i)],
                            vec![
                                (vec![id(j, i), id(l, k)], 0, one.clone()),
                                (vec![id(j, k), id(l, i)], 0, -one.clone()),
                                (vec![id(l, i), id(j, k)], 0, one.clone()),
                            ],
                        ));
                    }
                }
            }
        }
        Ring::new(key.clone(), matrix_names("M", n, m), rules, false)
    })
}

/// Weyl algebra with `x1..xN` and `d1..dN`, `d_a·x_b → x_b·d_a + δ_ab`.
pub fn weyl(n: usize) -> Result<Arc<Ring>> {
    let key = format!("weyl({n})");
    cached(&key, || {
        let mut names = numbered("x", n);
        names.extend(numbered("d", n));
        Ring::new(key.clone(), names, weyl_rules(n, 0), false)
    })
}

/// Weyl algebra on matrix-indexed variables `x[i,j]` and `d[i,j]`.
pub fn weyl_matrix(n: usize, m: usize) -> Result<Arc<Ring>> {
    let key = format!("weyl_matrix({n},{m})");
    cached(&key, || {
        let mut names = matrix_names("x", n, m);
        names.extend(matrix_names("d", n, m));
        Ring::new(key.clone(), names, weyl_rules(n * m, 0), false)
    })
}

/// Weyl algebra on explicit variable and derivative names; `ders[a]`
/// differentiates `vars[a]`.
pub fn weyl_on(label: &str, vars: Vec<String>, ders: Vec<String>) -> Result<Arc<Ring>> {
    if vars.len() != ders.len() {
        return Err(Error::Preset("weyl_on needs one derivative per variable".into()));
    }
    let key = format!("weyl({label})");
    cached(&key, || {
        let n = vars.len();
        let mut names = vars;
        names.extend(ders);
        Ring::new(key.clone(), names, weyl_rules(n, 0), false)
    })
}

fn weyl_rules(n: usize, offset: usize) -> Vec<Rule> {
    let x = |a: usize| (offset + a) as Gen;
    let d = |a: usize| (offset + n + a) as Gen;
    let mut rules = Vec::new();
    let mut xs: Vec<Gen> = (0..n).map(x).collect();
    rules.extend(commuting_rules(&xs));
    xs = (0..n).map(d).collect();
    rules.extend(commuting_rules(&xs));
    for a in 0..n {
        for b in 0..n {
            let mut rhs = vec![(vec![x(b), d(a)], 0, Q::one())];
            if a == b {
                rhs.push((vec![], 0, Q::one()));
            }
            rules.push(Rule::new(&[d(a), x(b)], rhs));
        }
    }
    rules
}

/// Differential operators in `z` with `z^{-1}`: generators `z`, `zinv`, `dz`.
pub fn laurent_weyl() -> Result<Arc<Ring>> {
    cached("laurent_weyl", || {
        let names = vec!["z".to_string(), "zinv".to_string(), "dz".to_string()];
        let (z, zi, dz) = (0, 1, 2);
        let one = Q::one();
        let rules = vec![
            Rule::new(&[z, zi], vec![(vec![], 0, one.clone())]),
            Rule::new(&[zi, z], vec![(vec![], 0, one.clone())]),
            Rule::new(&[dz, z], vec![(vec![z, dz], 0, one.clone()), (vec![], 0, one.clone())]),
            Rule::new(
                &[dz, zi],
                vec![(vec![zi, dz], 0, one.clone()), (vec![zi, zi], 0, -one.clone())],
            ),
        ];
        Ring::new("laurent_weyl", names, rules, false)
    })
}

/// Grassmann algebra on `psi1..psiN`.
pub fn grassmann(n: usize) -> Result<Arc<Ring>> {
    let key = format!("grassmann({n})");
    cached(&key, || Ring::new(key.clone(), numbered("psi", n), grassmann_rules(n, 0, None), false))
}

/// `ψ_i² → 0` and `ψ_j·ψ_i → −q^{k}·ψ_i·ψ_j` (`k = 0` when `qexp` is `None`).
fn grassmann_rules(n: usize, offset: usize, qexp: Option<i32>) -> Vec<Rule> {
    let p = |a: usize| (offset + a) as Gen;
    let mut rules = Vec::new();
    for i in 0..n {
        rules.push(Rule::new(&[p(i), p(i)], vec![]));
        for j in i + 1..n {
            rules.push(Rule::new(&[p(j), p(i)], vec![(vec![p(i), p(j)], qexp.unwrap_or(0), -Q::one())]));
        }
    }
    rules
}

/// Universal enveloping algebra of gl_n in the PBW basis of `e[i,j]`.
pub fn gl_pbw(n: usize) -> Result<Arc<Ring>> {
    let key = format!("gl_pbw({n})");
    cached(&key, || {
        let id = |i: usize, j: usize| (i * n + j) as Gen;
        let one = Q::one();
        let mut rules = Vec::new();
        for k in 0..n {
            for l in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if (k, l) <= (i, j) {
                            continue;
                        }
                        let mut rhs = vec![(vec![id(i, j), id(k, l)], 0, one.clone())];
                        if l == i {
                            rhs.push((vec![id(k, j)], 0, one.clone()));
                        }
                        if j == k {
                            rhs.push((vec![id(i, l)], 0, -one.clone()));
                        }
                        rules.push(Rule::new(&[id(k, l), id(i, j)], rhs));
                    }
                }
            }
        }
        Ring::new(key.clone(), matrix_names("e", n, n), rules, false)
    })
}

/// q-polynomials: `x_j·x_i → q·x_i·x_j` for `i<j`.
pub fn q_poly(n: usize) -> Result<Arc<Ring>> {
    let key = format!("q_poly({n})");
    cached(&key, || {
        let mut rules = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                rules.push(Rule::new(&[j as Gen, i as Gen], vec![(vec![i as Gen, j as Gen], 1, Q::one())]));
            }
        }
        Ring::new(key.clone(), numbered("x", n), rules, true)
    })
}

/// q-Grassmann: `ψ_i² → 0`, `ψ_j·ψ_i → −q^{-1}·ψ_i·ψ_j` for `i<j`.
pub fn q_grassmann(n: usize) -> Result<Arc<Ring>> {
    let key = format!("q_grassmann({n})");
    cached(&key, || Ring::new(key.clone(), numbered("psi", n), grassmann_rules(n, 0, Some(-1)), true))
}

/// Generic q-Manin matrix entries. For `i<k`, `j<l` with `a,b,c,d` the
/// corners of rows `i,k` and columns `j,l`: `ca → q·ac`, `db → q·bd`,
/// `da → ad − q^{-1}·cb + q·bc`.
pub fn q_manin_generic(n: usize, m: usize) -> Result<Arc<Ring>> {
    let key = format!("q_manin_generic({n},{m})");
    cached(&key, || Ring::new(key.clone(), matrix_names("M", n, m), q_manin_rules(n, m, false), true))
}

/// Entries of a matrix in Fun_q(GL_n): q-Manin relations for the matrix and
/// its transpose.
pub fn fun_q(n: usize) -> Result<Arc<Ring>> {
    let key = format!("fun_q({n})");
    cached(&key, || Ring::new(key.clone(), matrix_names("M", n, n), q_manin_rules(n, n, true), true))
}

fn q_manin_rules(n: usize, m: usize, transpose_too: bool) -> Vec<Rule> {
    let id = |i: usize, j: usize| (i * m + j) as Gen;
    let one = Q::one();
    let mut rules = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..m {
                rules.push(Rule::new(&[id(k, j), id(i, j)], vec![(vec![id(i, j), id(k, j)], 1, one.clone())]));
            }
            for j in 0..m {
                for l in j + 1..m {
                    let (a, b, c, d) = (id(i, j), id(i, l), id(k, j), id(k, l));
                    if transpose_too {
                        rules.push(Rule::swap(c, b));
                        rules.push(Rule::new(
                            &[d, a],
                            vec![
                                (vec![a, d], 0, one.clone()),
                                (vec![b, c], 1, one.clone()),
                                (vec![b, c], -1, -one.clone()),
                            ],
                        ));
                    } else {
                        rules.push(Rule::new(
                            &[d, a],
                            vec![
                                (vec![a, d], 0, one.clone()),
                                (vec![c, b], -1, -one.clone()),
                                (vec![b, c], 1, one.clone()),
                            ],
                        ));
                    }
                }
            }
        }
    }
    if transpose_too {
        for i in 0..n {
            for j in 0..m {
                for l in j + 1..m {
                    rules.push(Rule::new(&[id(i, l), id(i, j)], vec![(vec![id(i, j), id(i, l)], 1, one.clone())]));
                }
            }
        }
    }
    rules
}

/// Commutative `x1..xN`, `p1..pN` with `{p_i, x_j} = δ_ij`.
pub fn poisson_symplectic(n: usize) -> Result<Arc<Ring>> {
    let key = format!("poisson_symplectic({n})");
    cached(&key, || {
        let mut names = numbered("x", n);
        names.extend(numbered("p", n));
        let gens: Vec<Gen> = (0..2 * n as Gen).collect();
        let mut ring = Ring::unchecked(key.clone(), names, commuting_rules(&gens), false)?;
        ring.poisson = Some(PoissonTable::symplectic(
            (0..n as Gen).collect(),
            (n as Gen..2 * n as Gen).collect(),
        ));
        let report = ring.sys.check_local_confluence(SELF_TEST_BOUND);
        if !report.confluent() {
            return Err(Error::NotConfluent { name: key.clone(), divergent: report.divergent.len() });
        }
        Ok(Arc::new(ring))
    })
}

/// Free pair `M`, `B` together with `Q = [B, M]` central with respect to `M`:
/// `B·M → M·B + Q`, `Q·M → M·Q`.
pub fn toy_pair() -> Result<Arc<Ring>> {
    cached("toy_pair", || {
        let names = vec!["M".to_string(), "Q".to_string(), "B".to_string()];
        let (m, q, b) = (0, 1, 2);
        let rules = vec![
            Rule::new(&[b, m], vec![(vec![m, b], 0, Q::one()), (vec![q], 0, Q::one())]),
            Rule::swap(q, m),
        ];
        Ring::new("toy_pair", names, rules, false)
    })
}

/// Tensor product: disjoint union of alphabets, `a`'s generators first. With
/// `commute`, every generator of `b` is moved to the right of every
/// generator of `a`; otherwise the factors are free with respect to each other.
pub fn tensor(a: &Arc<Ring>, b: &Arc<Ring>, commute: bool) -> Result<Arc<Ring>> {
    let key = format!("{} {} {}", a.name(), if commute { "⊗" } else { "∗" }, b.name());
    cached(&key, || {
        let na = a.sys().names().len();
        let mut names = a.sys().names().to_vec();
        names.extend(b.sys().names().iter().cloned());
        let shift = |w: &[Gen]| -> Vec<Gen> { w.iter().map(|&g| g + na as Gen).collect() };
        let mut rules: Vec<Rule> = a.sys().rules().to_vec();
        for r in b.sys().rules() {
            rules.push(Rule::new(
                &shift(r.lhs.as_slice()),
                r.rhs.iter().map(|(w, q, c)| (shift(w.as_slice()), *q, c.clone())).collect(),
            ));
        }
        if commute {
            for h in 0..b.sys().names().len() {
                for g in 0..na {
                    rules.push(Rule::swap((na + h) as Gen, g as Gen));
                }
            }
        }
        let q = a.sys().has_q() || b.sys().has_q();
        let mut ring = Ring::unchecked(key.clone(), names, rules, q)?;
        ring.poisson = match (a.poisson(), b.poisson()) {
            (Some(p), None) => Some(p.clone()),
            (None, Some(p)) => Some(p.shifted(na as Gen)),
            _ => None,
        };
        let report = ring.sys.check_local_confluence(SELF_TEST_BOUND);
        if !report.confluent() {
            return Err(Error::NotConfluent { name: key.clone(), divergent: report.divergent.len() });
        }
        Ok(Arc::new(ring))
    })
}

/// Build a preset from its CLI/config name and integer parameters.
pub fn preset(name: &str, params: &[usize]) -> Result<Arc<Ring>> {
    let p = |i: usize| -> Result<usize> {
        params
            .get(i)
            .copied()
            .filter(|&v| v > 0)
            .ok_or_else(|| Error::Preset(format!("`{name}` needs {} positive parameter(s)", i + 1)))
    };
    let square = |i: usize| -> Result<(usize, usize)> { Ok((p(i)?, params.get(i + 1).copied().unwrap_or(p(i)?))) };
    match name {
        "free" => square(0).and_then(|(n, m)| free(n, m)),
        "commutative" => square(0).and_then(|(n, m)| commutative(n, m)),
        "cartier_foata" => square(0).and_then(|(n, m)| cartier_foata(n, m)),
        "manin_generic" | "manin" => square(0).and_then(|(n, m)| manin_generic(n, m)),
        "manin_generic_transpose" => square(0).and_then(|(n, m)| manin_generic_transpose(n, m)),
        "weyl" => weyl(p(0)?),
        "laurent_weyl" => laurent_weyl(),
        "grassmann" => grassmann(p(0)?),
        "gl_pbw" => gl_pbw(p(0)?),
        "q_poly" => q_poly(p(0)?),
        "q_grassmann" => q_grassmann(p(0)?),
        "q_manin_generic" => square(0).and_then(|(n, m)| q_manin_generic(n, m)),
        "fun_q" => fun_q(p(0)?),
        "poisson_symplectic" => poisson_symplectic(p(0)?),
        "toy_pair" => toy_pair(),
        other => Err(Error::Preset(format!("unknown preset `{other}`"))),
    }
}

/// Every shipped preset at the sizes covered by the self-test suite.
pub fn shipped_presets() -> Result<Vec<Arc<Ring>>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for m in 1..=3 {
            out.push(free(n, m)?);
            out.push(commutative(n, m)?);
            out.push(cartier_foata(n, m)?);
            out.push(manin_generic(n, m)?);
            out.push(manin_generic_transpose(n, m)?);
            out.push(q_manin_generic(n, m)?);
        }
    }
    for n in 1..=4 {
        out.push(weyl(n)?);
        out.push(grassmann(n)?);
        out.push(q_poly(n)?);
        out.push(q_grassmann(n)?);
        out.push(poisson_symplectic(n)?);
    }
    for n in 1..=3 {
        out.push(gl_pbw(n)?);
        out.push(fun_q(n)?);
        out.push(weyl_matrix(n, n)?);
    }
    out.push(laurent_weyl()?);
    out.push(toy_pair()?);
    out.push(tensor(&laurent_weyl()?, &gl_pbw(2)?, true)?);
    Ok(out)
}
