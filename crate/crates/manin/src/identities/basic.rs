//! Polynomial identities: Cramer, characteristic data, multiplicativity,
//! Frobenius, Plücker, the counterexamples and the structural checks.

use super::registry::{CheckCtx, Family};
use super::{Expect, Outcome, Residuals};
use crate::config::parse_rule_file;
use crate::error::{Error, Result};
use crate::ncmatrix::{
    adjugate, char_coeffs, coaction_check, det_col, det_col_laplace, det_col_perm_sum, det_row, frobenius_pair,
    is_manin, is_q_manin, is_qg_matrix, one_minus_t, trace_power, trace_sym_power_sorted, CoactionKind, Matrix,
    SeriesCtx,
};
use crate::ncpoly::{Param, Poly, Series, Q};
use crate::rings::{self, example_matrix, ExampleKind, Ring, SELF_TEST_BOUND};
use rand::Rng;
use std::sync::Arc;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn generic(ring: &Arc<Ring>, n: usize) -> Result<Matrix<Poly>> {
    Matrix::generic(ring, "M", n, n)
}

/// Refuse a ring override on checks whose ring is part of the statement.
pub(super) fn fixed_ring(ctx: &CheckCtx, what: &str) -> Result<()> {
    match &ctx.ring {
        Some(r) => Err(Error::Preset(format!("{what} runs on a fixed ring; cannot use `{r}`"))),
        None => Ok(()),
    }
}

fn scalar_identity(m: &Matrix<Poly>, x: &Poly) -> Result<Matrix<Poly>> {
    Matrix::identity(m.ctx(), m.rows()).left_mul_entry(x)
}

pub(super) fn confluence(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "confluence")?;
    let bound = ctx.n.max(SELF_TEST_BOUND);
    let mut res = Residuals::new();
    let presets = rings::shipped_presets()?;
    for ring in &presets {
        let rep = ring.confluence(bound);
        if !rep.confluent() {
            let detail = rep.error.clone().unwrap_or_else(|| format!("{} divergent critical pairs", rep.divergent.len()));
            res.push_raw(ring.name(), detail);
        }
    }
    let mut out = Outcome::new(&presets[0], Expect::Zero).param("bound", bound).param("presets", presets.len());
    out.ring = "shipped presets".into();
    out.residuals = res;
    Ok(out)
}

/// Two rules for the same left side with different right sides.
pub const BROKEN_FIXTURE: &str = "name = broken\ngens = a b\nb*a -> a*b + 1\nb*b*a -> a*b*b\n";

pub(super) fn confluence_broken(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "confluence_broken")?;
    let file = parse_rule_file(BROKEN_FIXTURE)?;
    let rep = file.system.check_local_confluence(ctx.n.max(SELF_TEST_BOUND));
    let mut res = Residuals::new();
    for p in &rep.divergent {
        res.push_raw(&p.word, format!("{} ≠ {}", p.left, p.right));
    }
    let ring = rings::free_on("a b", vec!["a".into(), "b".into()])?;
    let mut out = Outcome::new(&ring, Expect::Nonzero).param("bound", ctx.n.max(SELF_TEST_BOUND));
    out.ring = file.name;
    out.residuals = res;
    Ok(out)
}

fn random_entry<R: Rng>(rng: &mut R, ring: &Arc<Ring>) -> Result<Poly> {
    let g = ring.sys().names().len();
    let mut p = Poly::zero(ring);
    for _ in 0..rng.gen_range(1..=2) {
        let len = rng.gen_range(0..=2);
        let w: Vec<u16> = (0..len).map(|_| rng.gen_range(0..g) as u16).collect();
        let c = q(rng.gen_range(-3..=3));
        p = p.add(&Poly::word(ring, &w)?.scale(&c))?;
    }
    Ok(p)
}

/// Laplace expansion against the permutation sum on random matrices.
pub(super) fn det_oracle(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "det_oracle")?;
    let trials: usize = parse_variant(ctx, "trials", 500)?;
    let n_max = ctx.n.clamp(1, 4);
    let mut rng = ctx.rng("det_oracle");
    let pool = [rings::free(2, 2)?, rings::weyl(2)?, rings::manin_generic(3, 3)?];
    let mut res = Residuals::new();
    for t in 0..trials {
        let ring = &pool[t % pool.len()];
        let n = rng.gen_range(1..=n_max);
        let m = Matrix::try_from_fn(ring, n, n, |_, _| random_entry(&mut rng, ring))?;
        let d = det_col_laplace(&m)?.sub(&det_col_perm_sum(&m)?)?;
        res.push(&format!("trial {t} {}×{n} in {}", n, ring.name()), &d);
    }
    let mut out = Outcome::new(&pool[0], Expect::Zero).param("n_max", n_max).param("trials", trials);
    out.ring = "free(2,2), weyl(2), manin_generic(3,3)".into();
    out.residuals = res;
    Ok(out)
}

/// Read `key=value` from the variant string, with a default.
/// Read `key=<number>` from a variant such as `m=2,trials=10`.
pub(super) fn parse_variant(ctx: &CheckCtx, key: &str, default: usize) -> Result<usize> {
    let Some(v) = &ctx.variant else { return Ok(default) };
    let mut found = None;
    for part in v.split(',').map(str::trim) {
        let (k, x) = part
            .split_once('=')
            .ok_or_else(|| Error::Precondition(format!("expected `name=<number>` items, got `{v}`")))?;
        let x: usize = x.trim().parse().map_err(|_| Error::Precondition(format!("bad value in `{v}`")))?;
        if k.trim() == key {
            found = Some(x);
        }
    }
    Ok(found.unwrap_or(default))
}

pub(super) fn examples_manin(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "examples_manin")?;
    let n = ctx.n.max(2);
    let kinds = vec![
        ExampleKind::CapelliXyBlock { n, k: 1 },
        ExampleKind::CapelliZBlock { n, k: 1 },
        ExampleKind::CapelliXd { n, m: n },
        ExampleKind::GaudinSimple {
            k1: (0..n).map(|i| (0..n).map(|j| q((i * n + j) as i64 - 1)).collect()).collect(),
        },
        ExampleKind::GlNLax { n },
        ExampleKind::RankOne { n: n + 1 },
        ExampleKind::CartierFoataGeneric { n },
        ExampleKind::ManinGeneric { n },
        ExampleKind::ManinGenericTranspose { n },
    ];
    let mut res = Residuals::new();
    let mut first = None;
    for kind in &kinds {
        let m = example_matrix(kind)?;
        let m = if kind.transpose_manin() { m.transpose() } else { m };
        first.get_or_insert_with(|| m.ctx().clone());
        res.push_list(&format!("{kind:?}"), &is_manin(&m)?);
    }
    let mut out = Outcome::new(&first.expect("nonempty"), Expect::Zero).param("n", n);
    out.ring = "example rings".into();
    out.residuals = res;
    Ok(out)
}

pub(super) fn coaction(ctx: &CheckCtx) -> Result<Outcome> {
    let n = ctx.n;
    let family = ctx.family(Family::Manin)?;
    let ring = family.ring(n, n)?;
    let m = generic(&ring, n)?;
    let mut res = Residuals::new();
    res.push_list("polynomial", &coaction_check(&m, CoactionKind::Polynomial)?);
    res.push_list("grassmann", &coaction_check(&m, CoactionKind::Grassmann)?);
    if family == Family::Manin {
        let qm = generic(&rings::q_manin_generic(n, n)?, n)?;
        res.push_list("q-polynomial", &coaction_check(&qm, CoactionKind::QPolynomial)?);
        res.push_list("q-grassmann", &coaction_check(&qm, CoactionKind::QGrassmann)?);
    }
    let expect = if family.is_manin() { Expect::Zero } else { Expect::Nonzero };
    let mut out = Outcome::new(&ring, expect).param("n", n);
    out.residuals = res;
    Ok(out)
}

pub(super) fn q_manin(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "q_manin")?;
    let n = ctx.n;
    let qm = rings::q_manin_generic(n, n)?;
    let fq = rings::fun_q(n)?;
    let mut res = Residuals::new();
    res.push_list("q_manin_generic", &is_q_manin(&generic(&qm, n)?)?);
    let t = generic(&fq, n)?;
    res.push_list("fun_q q-Manin", &is_q_manin(&t)?);
    res.push_list("fun_q", &is_qg_matrix(&t)?);
    let mut out = Outcome::new(&qm, Expect::Zero).param("n", n);
    out.residuals = res;
    Ok(out)
}

/// Row cofactors: `(adj_row M)_kj = (−1)^{k+j} det_row(M without row j, column k)`.
fn adjugate_row(m: &Matrix<Poly>) -> Result<Matrix<Poly>> {
    let n = m.rows();
    if n == 1 {
        return Ok(Matrix::identity(m.ctx(), 1));
    }
    Matrix::try_from_fn(m.ctx(), n, n, |k, j| {
        let d = det_row(&m.without(j, k))?;
        Ok(if (k + j) % 2 == 0 { d } else { d.neg() })
    })
}

pub(super) fn cramer(ctx: &CheckCtx) -> Result<Outcome> {
    let n = ctx.n;
    if !(2..=4).contains(&n) {
        return Err(Error::Precondition(format!("cramer needs 2 ≤ n ≤ 4, got {n}")));
    }
    let family = ctx.family(Family::Manin)?;
    let ring = family.ring(n, n)?;
    let m = generic(&ring, n)?;
    let det = det_col(&m)?;
    let mut res = Residuals::new();
    res.push_matrix("adj·M", &adjugate(&m)?.mul(&m)?.sub(&scalar_identity(&m, &det)?)?);
    if family == Family::Manin {
        let t = generic(&rings::manin_generic_transpose(n, n)?, n)?;
        let d = det_row(&t)?;
        res.push_matrix("row M·adj", &t.mul(&adjugate_row(&t)?)?.sub(&scalar_identity(&t, &d)?)?);
    }
    let mut out = Outcome::new(&ring, ctx.expect(family, &format!("cramer_free_{n}"))).param("n", n);
    out.residuals = res;
    Ok(out)
}

pub(super) fn cramer_right(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "cramer_right")?;
    let ring = rings::manin_generic(2, 2)?;
    let m = generic(&ring, 2)?;
    let det = det_col(&m)?;
    let mut out = Outcome::new(&ring, Expect::Golden("cramer_right_manin_2".into())).param("n", 2);
    out.residuals.push_matrix("M·adj", &m.mul(&adjugate(&m)?)?.sub(&scalar_identity(&m, &det)?)?);
    Ok(out)
}

pub(super) fn cayley_hamilton(ctx: &CheckCtx) -> Result<Outcome> {
    let n = ctx.n;
    let family = ctx.family(Family::Manin)?;
    let ring = family.ring(n, n)?;
    let m = generic(&ring, n)?;
    let sigma = char_coeffs(&m)?;
    let mut acc = Matrix::zeros(&ring, n, n);
    let mut power = Matrix::identity(&ring, n);
    for i in (0..=n).rev() {
        let term = power.left_mul_entry(&sigma[i])?;
        acc = if i % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        power = power.mul(&m)?;
    }
    let mut out = Outcome::new(&ring, ctx.expect(family, &format!("cayley_hamilton_free_{n}"))).param("n", n);
    out.residuals.push_matrix("", &acc);
    Ok(out)
}

/// `Σ_{k≤D} t^k Tr M^{k+1}`.
fn trace_series(m: &Matrix<Poly>, d: usize) -> Result<Series> {
    let coeffs = (0..=d).map(|k| trace_power(m, k as u32 + 1)).collect::<Result<Vec<_>>>()?;
    Series::from_coeffs(m.ctx(), Param::T, d, coeffs)
}

/// `Σ_{k≤D} t^k h_k` with `h_k` the symmetric-power traces.
fn sym_series(m: &Matrix<Poly>, d: usize) -> Result<Series> {
    let coeffs = (0..=d).map(|k| trace_sym_power_sorted(m, k)).collect::<Result<Vec<_>>>()?;
    Series::from_coeffs(m.ctx(), Param::T, d, coeffs)
}

/// `det_col(1 − tM)` to degree `d`.
fn char_series(m: &Matrix<Poly>, d: usize) -> Result<Series> {
    det_col(&one_minus_t(m, Param::T, d))
}

pub(super) fn newton(ctx: &CheckCtx) -> Result<Outcome> {
    let (n, d) = (ctx.n, ctx.degree()?);
    let family = ctx.family(Family::Manin)?;
    let ring = family.ring(n, n)?;
    let m = generic(&ring, n)?;
    let e = char_series(&m, d + 1)?;
    let r = e.with_degree(d).mul(&trace_series(&m, d)?)?.add(&e.derivative().with_degree(d))?;
    let mut out = Outcome::new(&ring, ctx.expect(family, &format!("newton_free_{n}")))
        .param("n", n)
        .param("degree", d);
    out.residuals.push("", &r);
    Ok(out)
}

pub(super) fn second_newton(ctx: &CheckCtx) -> Result<Outcome> {
    let (n, d) = (ctx.n, ctx.degree()?);
    let family = ctx.family(Family::Manin)?;
    let ring = family.ring(n, n)?;
    let m = generic(&ring, n)?;
    let s = sym_series(&m, d + 1)?;
    let r = s.derivative().with_degree(d).sub(&trace_series(&m, d)?.mul(&s.with_degree(d))?)?;
    let mut out = Outcome::new(&ring, ctx.expect(family, &format!("second_newton_free_{n}")))
        .param("n", n)
        .param("degree", d);
    out.residuals.push("", &r);
    Ok(out)
}

pub(super) fn macmahon(ctx: &CheckCtx) -> Result<Outcome> {
    let (n, d) = (ctx.n, ctx.degree()?);
    let family = ctx.family(Family::Manin)?;
    let ring = family.ring(n, n)?;
    let m = generic(&ring, n)?;
    let e = char_series(&m, d)?;
    let s = sym_series(&m, d)?;
    let one = Series::constant(Poly::one(&ring), Param::T, d);
    let mut out = Outcome::new(&ring, ctx.expect(family, &format!("macmahon_free_{n}")))
        .param("n", n)
        .param("degree", d);
    out.residuals.push("E·S", &e.mul(&s)?.sub(&one)?);
    out.residuals.push("S·E", &s.mul(&e)?.sub(&one)?);
    Ok(out)
}

pub(super) fn det_multiplicativity(ctx: &CheckCtx) -> Result<Outcome> {
    let n = ctx.n;
    let family = ctx.family(Family::Manin)?;
    if family == Family::Free && n == 2 {
        // Observation for free 2×2 M against a commuting symbolic N.
        let ring = rings::tensor(&rings::free(2, 2)?, &rings::commutative_sym("N", 2, 2)?, true)?;
        let m = generic(&ring, 2)?;
        let nm = Matrix::generic(&ring, "N", 2, 2)?;
        let r = det_col(&m.mul(&nm)?)?.sub(&det_col(&m)?.mul(&det_col(&nm)?)?)?;
        let mut out = Outcome::new(&ring, ctx.expect(family, "det_multiplicativity_free_2")).param("n", n);
        out.residuals.push("(iii)", &r);
        return Ok(out);
    }
    let base = family.ring(n, n)?;
    let ring = rings::tensor(&base, &rings::manin_generic_sym("N", n, n)?, true)?;
    let m = generic(&ring, n)?;
    let nm = Matrix::generic(&ring, "N", n, n)?;
    let mut res = Residuals::new();
    res.push("(i)", &det_col(&m.mul(&nm)?)?.sub(&det_col(&m)?.mul(&det_col(&nm)?)?)?);
    for k in 1..n {
        let r2 = rings::tensor(&base, &rings::free_sym("X", k, n - k)?, false)?;
        let m2 = generic(&r2, n)?;
        let x = Matrix::generic(&r2, "X", k, n - k)?;
        let u = Matrix::from_blocks(
            &Matrix::identity(&r2, k),
            &x,
            &Matrix::zeros(&r2, n - k, k),
            &Matrix::identity(&r2, n - k),
        )?;
        res.push(&format!("(ii) k={k}"), &det_col(&m2.mul(&u)?)?.sub(&det_col(&m2)?)?);
    }
    let expect = if family.is_manin() { Expect::Zero } else { Expect::Nonzero };
    let mut out = Outcome::new(&base, expect).param("n", n);
    out.residuals = res;
    Ok(out)
}

pub(super) fn frobenius(ctx: &CheckCtx) -> Result<Outcome> {
    let n = ctx.n;
    let family = ctx.family(Family::Manin)?;
    let ring = family.ring(n, n)?;
    let m = generic(&ring, n)?;
    let basis = |k: usize| (0..n).map(|i| q((i == k) as i64)).collect::<Vec<_>>();
    let starts: Vec<usize> = if family.is_manin() { vec![0, n - 1] } else { vec![0] };
    let mut res = Residuals::new();
    for k in starts {
        let (d, f) = frobenius_pair(&m, &basis(k))?;
        res.push_matrix(&format!("e{}", k + 1), &f.mul(&d)?.sub(&d.mul(&m)?)?);
    }
    let mut out = Outcome::new(&ring, ctx.expect(family, &format!("frobenius_free_{n}"))).param("n", n);
    out.residuals = res;
    Ok(out)
}

pub(super) fn plucker(ctx: &CheckCtx) -> Result<Outcome> {
    let ring = match ctx.ring.as_deref().map(|r| r.split('(').next().unwrap_or(r)) {
        None | Some("manin_generic_transpose") => rings::manin_generic_transpose(2, 4)?,
        Some("free") => rings::free(2, 4)?,
        Some("commutative") => rings::commutative(2, 4)?,
        Some(other) => return Err(Error::Preset(format!("plucker cannot run on `{other}`"))),
    };
    let a = Matrix::generic(&ring, "M", 2, 4)?;
    let pi = |i: usize, j: usize| det_row(&a.select(&[1, 2], &[i, j]));
    let sym = |i: usize, j: usize, k: usize, l: usize| -> Result<Poly> {
        let (x, y) = (pi(i, j)?, pi(k, l)?);
        x.mul(&y)?.add(&y.mul(&x)?)
    };
    let r = sym(1, 2, 3, 4)?.sub(&sym(1, 3, 2, 4)?)?.add(&sym(1, 4, 2, 3)?)?;
    let expect = if ring.name().starts_with("free") { Expect::Nonzero } else { Expect::Zero };
    let mut out = Outcome::new(&ring, expect).param("n", 2).param("m", 4);
    out.residuals.push("", &r);
    Ok(out)
}

/// `εM` as a matrix of series to order 3 over the 2×2 Cartier–Foata ring.
fn eps_matrix() -> Result<(Arc<Ring>, Matrix<Series>)> {
    let ring = rings::cartier_foata(2, 2)?;
    let m = generic(&ring, 2)?;
    let ctx = SeriesCtx {
        ring: ring.clone(),
        param: Param::Eps,
        degree: 3,
    };
    let x = m.map(&ctx, |p| Ok(Series::monomial(p.clone(), 1, Param::Eps, 3)))?;
    Ok((ring, x))
}

/// `Σ_{k=0}^{3} c_k X^k` for a nilpotent-mod-ε⁴ matrix `X`.
fn matrix_poly(x: &Matrix<Series>, coeffs: &[Q]) -> Result<Matrix<Series>> {
    let mut acc = Matrix::zeros(x.ctx(), x.rows(), x.cols());
    let mut power = Matrix::identity(x.ctx(), x.rows());
    for c in coeffs {
        acc = acc.add(&power.scale(c))?;
        power = power.mul(x)?;
    }
    Ok(acc)
}

pub(super) fn nogo_exp_det(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "nogo_exp_det")?;
    let (ring, x) = eps_matrix()?;
    let e = matrix_poly(&x, &[q(1), q(1), Q::new(1.into(), 2.into()), Q::new(1.into(), 6.into())])?;
    let r = det_col(&e)?.sub(&x.trace()?.exp()?)?;
    let mut out = Outcome::new(&ring, Expect::Golden("nogo_exp_det".into())).param("n", 2).param("degree", 3);
    out.residuals.push("", &r);
    Ok(out)
}

pub(super) fn nogo_det_log(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "nogo_det_log")?;
    let (ring, x) = eps_matrix()?;
    let log = matrix_poly(&x, &[q(0), q(1), Q::new((-1).into(), 2.into()), Q::new(1.into(), 3.into())])?;
    let one_plus = Matrix::identity(x.ctx(), 2).add(&x)?;
    let r = det_col(&one_plus)?.sub(&log.trace()?.exp()?)?;
    let mut out = Outcome::new(&ring, Expect::Nonzero).param("n", 2).param("degree", 3);
    out.residuals.push("", &r);
    Ok(out)
}

pub(super) fn nogo_trace_det(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "nogo_trace_det")?;
    let ring = rings::manin_generic(2, 2)?;
    let m = generic(&ring, 2)?;
    let mut out = Outcome::new(&ring, Expect::Nonzero).param("n", 2);
    out.residuals.push("[Tr M, det M]", &m.trace()?.commutator(&det_col(&m)?)?);
    Ok(out)
}

pub(super) fn nogo_square(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "nogo_square")?;
    let ring = rings::manin_generic(2, 2)?;
    let m = generic(&ring, 2)?;
    let mut out = Outcome::new(&ring, Expect::Nonzero).param("n", 2);
    out.residuals.push_list("M^2", &is_manin(&m.mul(&m)?)?);
    Ok(out)
}
