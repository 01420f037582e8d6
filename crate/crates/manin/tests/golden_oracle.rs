//! The shipped golden residuals, recomputed by a naive expansion that shares
//! no code with the library: words are plain vectors of generator names,
//! determinants are literal permutation sums and each quotient ring is
//! handled by its own small normal-form routine.

use manin::identities::{builtin_golden, find_check, run_check, CheckCtx, Verdict};
use manin::{rings, Poly, Ring};
use num_rational::Ratio;
use std::collections::BTreeMap;
use std::sync::Arc;

type R = Ratio<i64>;
type Word = Vec<String>;

#[derive(Clone, Debug, Default, PartialEq)]
struct NP(BTreeMap<Word, R>);

impl NP {
    fn zero() -> Self {
        NP::default()
    }

    fn c(x: R) -> Self {
        let mut p = NP::zero();
        p.add_term(vec![], x);
        p
    }

    fn var(name: &str) -> Self {
        let mut p = NP::zero();
        p.add_term(vec![name.to_string()], R::from(1));
        p
    }

    fn add_term(&mut self, w: Word, x: R) {
        let e = self.0.entry(w.clone()).or_insert_with(|| R::from(0));
        *e += x;
        if *e == R::from(0) {
            self.0.remove(&w);
        }
    }

    fn add(&self, o: &NP) -> NP {
        let mut r = self.clone();
        for (w, x) in &o.0 {
            r.add_term(w.clone(), *x);
        }
        r
    }

    fn scale(&self, k: R) -> NP {
        let mut r = NP::zero();
        for (w, x) in &self.0 {
            r.add_term(w.clone(), *x * k);
        }
        r
    }

    fn sub(&self, o: &NP) -> NP {
        self.add(&o.scale(R::from(-1)))
    }

    fn mul(&self, o: &NP) -> NP {
        let mut r = NP::zero();
        for (u, x) in &self.0 {
            for (v, y) in &o.0 {
                let mut w = u.clone();
                w.extend(v.iter().cloned());
                r.add_term(w, *x * *y);
            }
        }
        r
    }

    /// Rewrite every word with `f`, which returns a linear combination.
    fn map_words(&self, f: &dyn Fn(&Word) -> NP) -> NP {
        let mut r = NP::zero();
        for (w, x) in &self.0 {
            r = r.add(&f(w).scale(*x));
        }
        r
    }
}

/// Truncated series in one parameter with naive coefficients.
type NS = Vec<NP>;

fn s_mul(a: &NS, b: &NS, d: usize) -> NS {
    (0..=d)
        .map(|k| (0..=k).fold(NP::zero(), |acc, i| acc.add(&a[i].mul(&b[k - i]))))
        .collect()
}

fn s_add(a: &NS, b: &NS) -> NS {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn s_sub(a: &NS, b: &NS) -> NS {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn name(i: usize, j: usize) -> String {
    format!("M[{},{}]", i + 1, j + 1)
}

fn sym(s: &str, i: usize, j: usize) -> String {
    format!("{s}[{},{}]", i + 1, j + 1)
}

/// 2×2 matrices only: the identities pinned by goldens are all at n = 2.
type M2<T> = [[T; 2]; 2];

/// Column determinant `A_{σ1,1} A_{σ2,2}` summed with signs.
fn det_col_np(a: &M2<NP>) -> NP {
    a[0][0].mul(&a[1][1]).sub(&a[1][0].mul(&a[0][1]))
}

fn det_col_ns(a: &M2<NS>, d: usize) -> NS {
    s_sub(&s_mul(&a[0][0], &a[1][1], d), &s_mul(&a[1][0], &a[0][1], d))
}

fn m_np() -> M2<NP> {
    [[NP::var(&name(0, 0)), NP::var(&name(0, 1))], [NP::var(&name(1, 0)), NP::var(&name(1, 1))]]
}

fn mat_mul(a: &M2<NP>, b: &M2<NP>) -> M2<NP> {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn trace(a: &M2<NP>) -> NP {
    a[0][0].add(&a[1][1])
}

/// `1 − tM` as a matrix of series.
fn one_minus_t(d: usize) -> M2<NS> {
    let m = m_np();
    let entry = |i: usize, j: usize| {
        let mut s = vec![NP::zero(); d + 1];
        if i == j {
            s[0] = NP::c(R::from(1));
        }
        s[1] = m[i][j].scale(R::from(-1));
        s
    };
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

/// Row permanent of the submatrix on a repeated index tuple.
fn perm_row_tuple(m: &M2<NP>, l: &[usize]) -> NP {
    match l {
        [i] => m[*i][*i].clone(),
        [i, j] => m[*i][*i].mul(&m[*j][*j]).add(&m[*i][*j].mul(&m[*j][*i])),
        _ => unreachable!(),
    }
}

/// Library polynomial as a naive one, keyed by generator names.
fn from_lib(p: &Poly) -> NP {
    let names = p.ring().sys().names().to_vec();
    let mut r = NP::zero();
    for (m, c) in p.terms() {
        assert_eq!(m.q, 0);
        let w = m.word.as_slice().iter().map(|&g| names[g as usize].clone()).collect();
        let num: i64 = c.numer().to_string().parse().unwrap();
        let den: i64 = c.denom().to_string().parse().unwrap();
        r.add_term(w, R::new(num, den));
    }
    r
}

fn golden_components(key: &str, ring: &Arc<Ring>) -> BTreeMap<String, NP> {
    let text = builtin_golden(key).unwrap_or_else(|| panic!("golden {key} missing"));
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    v["components"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(l, e)| (l.clone(), from_lib(&Poly::parse(ring, e.as_str().unwrap()).unwrap())))
        .collect()
}

fn golden_is_exact(key: &str) -> bool {
    let v: serde_json::Value = serde_json::from_str(builtin_golden(key).unwrap()).unwrap();
    v["exact"].as_bool().unwrap()
}

/// Labelled nonzero entries `label(i,j)` of a 2×2 naive matrix.
fn entries(label: &str, a: &M2<NP>) -> BTreeMap<String, NP> {
    let mut out = BTreeMap::new();
    for i in 0..2 {
        for j in 0..2 {
            if !a[i][j].0.is_empty() {
                out.insert(format!("{label}({},{})", i + 1, j + 1), a[i][j].clone());
            }
        }
    }
    out
}

fn assert_golden(key: &str, ring: &Arc<Ring>, oracle: BTreeMap<String, NP>, canon: &dyn Fn(&NP) -> NP) {
    let golden = golden_components(key, ring);
    for (label, want) in &golden {
        let got = oracle.get(label).cloned().unwrap_or_default();
        assert_eq!(canon(&got), canon(want), "{key}: component {label}");
    }
    if golden_is_exact(key) {
        for label in oracle.keys() {
            assert!(golden.contains_key(label), "{key}: oracle has unpinned component {label}");
        }
    }
}

fn assert_check_matches(check: &str, ring: Option<&str>) {
    let mut ctx = CheckCtx::new(2);
    ctx.ring = ring.map(str::to_string);
    let report = run_check(find_check(check).unwrap(), &ctx, false).unwrap();
    assert_eq!(report.verdict, Verdict::GoldenMatch, "{check}: {:?}", report.residuals);
}

fn id(p: &NP) -> NP {
    p.clone()
}

#[test]
fn newton_residual_matches_naive_expansion() {
    let d = 3;
    let e = det_col_ns(&one_minus_t(d + 1), d + 1);
    let m = m_np();
    let mut power = m.clone();
    let mut tr: NS = Vec::new();
    for _ in 0..=d {
        tr.push(trace(&power));
        power = mat_mul(&power, &m);
    }
    let de: NS = (0..=d).map(|k| e[k + 1].scale(R::from(k as i64 + 1))).collect();
    let r = s_add(&s_mul(&e[..=d].to_vec(), &tr, d), &de);
    let oracle = (1..=d)
        .filter(|&k| !r[k].0.is_empty())
        .map(|k| (format!("t^{k}"), r[k].clone()))
        .collect();
    assert_golden("newton_free_2", &rings::free(2, 2).unwrap(), oracle, &id);
    assert_check_matches("newton", Some("free"));
}

#[test]
fn macmahon_residual_matches_naive_expansion() {
    let d = 2;
    let e = det_col_ns(&one_minus_t(d), d);
    let m = m_np();
    let s: NS = vec![
        NP::c(R::from(1)),
        trace(&m),
        // weakly increasing index pairs, divided by multiplicities
        perm_row_tuple(&m, &[0, 0])
            .scale(R::new(1, 2))
            .add(&perm_row_tuple(&m, &[0, 1]))
            .add(&perm_row_tuple(&m, &[1, 1]).scale(R::new(1, 2))),
    ];
    let mut one: NS = vec![NP::zero(); d + 1];
    one[0] = NP::c(R::from(1));
    let es = s_sub(&s_mul(&e, &s, d), &one);
    let se = s_sub(&s_mul(&s, &e, d), &one);
    let mut oracle = BTreeMap::new();
    for k in 1..=d {
        if !es[k].0.is_empty() {
            oracle.insert(format!("E·S t^{k}"), es[k].clone());
        }
        if !se[k].0.is_empty() {
            oracle.insert(format!("S·E t^{k}"), se[k].clone());
        }
    }
    assert_golden("macmahon_free_2", &rings::free(2, 2).unwrap(), oracle, &id);
    assert_check_matches("macmahon", Some("free"));
}

fn adj(m: &M2<NP>) -> M2<NP> {
    let neg = |p: &NP| p.scale(R::from(-1));
    [[m[1][1].clone(), neg(&m[0][1])], [neg(&m[1][0]), m[0][0].clone()]]
}

fn scalar_matrix(p: &NP) -> M2<NP> {
    [[p.clone(), NP::zero()], [NP::zero(), p.clone()]]
}

fn mat_sub(a: &M2<NP>, b: &M2<NP>) -> M2<NP> {
    [[a[0][0].sub(&b[0][0]), a[0][1].sub(&b[0][1])], [a[1][0].sub(&b[1][0]), a[1][1].sub(&b[1][1])]]
}

#[test]
fn cramer_residual_matches_naive_expansion() {
    let m = m_np();
    let r = mat_sub(&mat_mul(&adj(&m), &m), &scalar_matrix(&det_col_np(&m)));
    assert_golden("cramer_free_2", &rings::free(2, 2).unwrap(), entries("adj·M", &r), &id);
    assert_check_matches("cramer", Some("free"));
}

#[test]
fn cayley_hamilton_residual_matches_naive_expansion() {
    let m = m_np();
    let sigma1 = trace(&m);
    let sigma2 = det_col_np(&m);
    let left = |c: &NP, a: &M2<NP>| -> M2<NP> {
        [[c.mul(&a[0][0]), c.mul(&a[0][1])], [c.mul(&a[1][0]), c.mul(&a[1][1])]]
    };
    let r = mat_sub(&mat_mul(&m, &m), &left(&sigma1, &m));
    let r = mat_sub(&r, &scalar_matrix(&sigma2.scale(R::from(-1))));
    assert_golden("cayley_hamilton_free_2", &rings::free(2, 2).unwrap(), entries("", &r), &id);
    assert_check_matches("cayley_hamilton", Some("free"));
}

#[test]
fn frobenius_residual_matches_naive_expansion() {
    let m = m_np();
    let one = NP::c(R::from(1));
    // rows v and vM for v = (1, 0)
    let d = [[one.clone(), NP::zero()], [m[0][0].clone(), m[0][1].clone()]];
    let frob = [[NP::zero(), one], [det_col_np(&m).scale(R::from(-1)), trace(&m)]];
    let r = mat_sub(&mat_mul(&frob, &d), &mat_mul(&d, &m));
    assert_golden("frobenius_free_2", &rings::free(2, 2).unwrap(), entries("e1", &r), &id);
    assert_check_matches("frobenius", Some("free"));
}

/// `M` letters keep their order; the central commuting `N` letters are
/// sorted and moved to the end.
fn central_n(p: &NP) -> NP {
    p.map_words(&|w| {
        let mut ms: Word = w.iter().filter(|g| g.starts_with('M')).cloned().collect();
        let mut ns: Word = w.iter().filter(|g| g.starts_with('N')).cloned().collect();
        ns.sort();
        ms.extend(ns);
        let mut r = NP::zero();
        r.add_term(ms, R::from(1));
        r
    })
}

#[test]
fn det_multiplicativity_residual_matches_naive_expansion() {
    let m = m_np();
    let nm: M2<NP> = [
        [NP::var(&sym("N", 0, 0)), NP::var(&sym("N", 0, 1))],
        [NP::var(&sym("N", 1, 0)), NP::var(&sym("N", 1, 1))],
    ];
    let r = det_col_np(&mat_mul(&m, &nm)).sub(&det_col_np(&m).mul(&det_col_np(&nm)));
    let oracle = BTreeMap::from([("(iii)".to_string(), central_n(&r))]);
    let ring = rings::tensor(&rings::free(2, 2).unwrap(), &rings::commutative_sym("N", 2, 2).unwrap(), true).unwrap();
    assert_golden("det_multiplicativity_free_2", &ring, oracle, &central_n);
    assert_check_matches("det_multiplicativity", Some("free"));
}

/// Normal form in the 2×2 Manin algebra by repeated leftmost rewriting with
/// `ca → ac`, `db → bd` and `da → ad + bc − cb`.
fn manin2_normal(p: &NP) -> NP {
    let (a, b, c, d) = (name(0, 0), name(0, 1), name(1, 0), name(1, 1));
    let mut cur = p.clone();
    loop {
        let mut next = NP::zero();
        let mut changed = false;
        for (w, x) in &cur.0 {
            let hit = (0..w.len().saturating_sub(1)).find_map(|i| {
                let pair = (&w[i], &w[i + 1]);
                let rhs: Option<Vec<(Vec<&String>, i64)>> = if pair == (&c, &a) {
                    Some(vec![(vec![&a, &c], 1)])
                } else if pair == (&d, &b) {
                    Some(vec![(vec![&b, &d], 1)])
                } else if pair == (&d, &a) {
                    Some(vec![(vec![&a, &d], 1), (vec![&b, &c], 1), (vec![&c, &b], -1)])
                } else {
                    None
                };
                rhs.map(|r| (i, r))
            });
            match hit {
                None => next.add_term(w.clone(), *x),
                Some((i, rhs)) => {
                    changed = true;
                    for (mid, k) in rhs {
                        let mut nw: Word = w[..i].to_vec();
                        nw.extend(mid.into_iter().cloned());
                        nw.extend(w[i + 2..].iter().cloned());
                        next.add_term(nw, *x * R::from(k));
                    }
                }
            }
        }
        cur = next;
        if !changed {
            return cur;
        }
    }
}

#[test]
fn cramer_right_residual_matches_naive_manin_rewriting() {
    let m = m_np();
    let r = mat_sub(&mat_mul(&m, &adj(&m)), &scalar_matrix(&det_col_np(&m)));
    let r = [
        [manin2_normal(&r[0][0]), manin2_normal(&r[0][1])],
        [manin2_normal(&r[1][0]), manin2_normal(&r[1][1])],
    ];
    let ring = rings::manin_generic(2, 2).unwrap();
    assert_golden("cramer_right_manin_2", &ring, entries("M·adj", &r), &manin2_normal);
    let report = run_check(find_check("cramer_right").unwrap(), &CheckCtx::new(2), false).unwrap();
    assert_eq!(report.verdict, Verdict::GoldenMatch, "{:?}", report.residuals);
}

/// Cartier–Foata normal form: entries of different rows commute, so a word
/// is sorted stably by row.
fn row_sorted(p: &NP) -> NP {
    p.map_words(&|w| {
        let mut v = w.clone();
        v.sort_by_key(|g| g[2..3].to_string());
        let mut r = NP::zero();
        r.add_term(v, R::from(1));
        r
    })
}

#[test]
fn nogo_exp_residual_matches_naive_expansion() {
    let d = 3;
    let m = m_np();
    let mut fact = 1i64;
    let mut power = [[NP::c(R::from(1)), NP::zero()], [NP::zero(), NP::c(R::from(1))]];
    let mut exp_m: M2<NS> = std::array::from_fn(|_| std::array::from_fn(|_| vec![NP::zero(); d + 1]));
    let tr = trace(&m);
    let mut tr_pow = NP::c(R::from(1));
    let mut exp_tr: NS = Vec::new();
    for k in 0..=d {
        if k > 0 {
            fact *= k as i64;
            power = mat_mul(&power, &m);
            tr_pow = tr_pow.mul(&tr);
        }
        for i in 0..2 {
            for j in 0..2 {
                exp_m[i][j][k] = power[i][j].scale(R::new(1, fact));
            }
        }
        exp_tr.push(tr_pow.scale(R::new(1, fact)));
    }
    let r = s_sub(&det_col_ns(&exp_m, d), &exp_tr);
    for k in 0..d {
        assert!(row_sorted(&r[k]).0.is_empty(), "order {k} should vanish");
    }
    let oracle = BTreeMap::from([("ε^3".to_string(), row_sorted(&r[3]))]);
    assert_golden("nogo_exp_det", &rings::cartier_foata(2, 2).unwrap(), oracle, &row_sorted);
    let report = run_check(find_check("nogo_exp_det").unwrap(), &CheckCtx::new(2), false).unwrap();
    assert_eq!(report.verdict, Verdict::GoldenMatch, "{:?}", report.residuals);
}

#[test]
fn nogo_exp_residual_is_the_commutator_form() {
    // (1/6)([b,a]c + b[c,d]) written out with a = M11, b = M12, c = M21, d = M22
    let (a, b, c, d) = (NP::var(&name(0, 0)), NP::var(&name(0, 1)), NP::var(&name(1, 0)), NP::var(&name(1, 1)));
    let comm = |x: &NP, y: &NP| x.mul(y).sub(&y.mul(x));
    let want = comm(&b, &a).mul(&c).add(&b.mul(&comm(&c, &d))).scale(R::new(1, 6));
    let ring = rings::cartier_foata(2, 2).unwrap();
    let golden = golden_components("nogo_exp_det", &ring);
    assert_eq!(row_sorted(&golden["ε^3"]), row_sorted(&want));
}

#[test]
fn newton_low_orders_are_the_commutator_forms() {
    let (a, b, c, d) = (NP::var(&name(0, 0)), NP::var(&name(0, 1)), NP::var(&name(1, 0)), NP::var(&name(1, 1)));
    let comm = |x: &NP, y: &NP| x.mul(y).sub(&y.mul(x));
    let t1 = comm(&a, &d).add(&comm(&b, &c));
    let t2 = t1.mul(&a).add(&comm(&c, &a).mul(&b)).add(&comm(&b, &d).mul(&c));
    let golden = golden_components("newton_free_2", &rings::free(2, 2).unwrap());
    assert_eq!(golden["t^1"], t1);
    assert_eq!(golden["t^2"], t2);
    let mac = golden_components("macmahon_free_2", &rings::free(2, 2).unwrap());
    assert_eq!(mac["E·S t^2"], t1);
}
