//! Identities for inverses, verified on `M = 1 − tN` modulo `t^{D+1}`.

use super::basic::parse_variant;
use super::registry::{CheckCtx, Family};
use super::{Expect, Outcome, Residuals};
use crate::error::{Error, Result};
use crate::ncmatrix::{
    det_col, det_col_order, gauss_det, is_manin, one_minus_t, quasideterminant, schur_complement, series_inv_matrix,
    Alg, ColOrder, Corner, GaussSide, Matrix,
};
use crate::ncpoly::{Param, Poly, Series, Q};
use crate::rings::{self, poisson_bracket, poisson_bracket_series, Ring};
use std::sync::Arc;

struct Model {
    ring: Arc<Ring>,
    family: Family,
    m: Matrix<Series>,
    degree: usize,
}

fn model(ctx: &CheckCtx) -> Result<Model> {
    let degree = ctx.degree()?;
    let family = ctx.family(Family::Manin)?;
    let ring = family.ring(ctx.n, ctx.n)?;
    let n = Matrix::generic(&ring, "M", ctx.n, ctx.n)?;
    Ok(Model {
        m: one_minus_t(&n, Param::T, degree),
        ring,
        family,
        degree,
    })
}

impl Model {
    fn outcome(&self, ctx: &CheckCtx, res: Residuals) -> Outcome {
        let expect = if self.family.is_manin() { Expect::Zero } else { Expect::Nonzero };
        let mut out = Outcome::new(&self.ring, expect).param("n", ctx.n).param("degree", self.degree);
        out.residuals = res;
        out
    }
}

/// `det_col`, with the empty determinant equal to one.
fn det0(m: &Matrix<Series>) -> Result<Series> {
    if m.rows() == 0 {
        Ok(Series::one_in(m.ctx()))
    } else {
        det_col(m)
    }
}

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    (1..=n).filter(|x| !set.contains(x)).collect()
}

/// Strictly increasing 1-based `r`-subsets of `1..=n`.
fn subsets1(n: usize, r: usize) -> Vec<Vec<usize>> {
    crate::ncmatrix::subsets(n, r)
        .into_iter()
        .map(|s| s.into_iter().map(|x| x + 1).collect())
        .collect()
}

pub(super) fn schur_block(ctx: &CheckCtx) -> Result<Outcome> {
    let md = model(ctx)?;
    let (m, n) = (&md.m, ctx.n);
    if n < 2 {
        return Err(Error::Precondition("schur_block needs n ≥ 2".into()));
    }
    let det = det_col(m)?;
    let mut res = Residuals::new();
    for k in 1..n {
        let a = m.block(0, k, 0, k);
        let d = m.block(k, n, k, n);
        let sd = schur_complement(m, k, Corner::Lower)?;
        let sa = schur_complement(m, k, Corner::Upper)?;
        let (da, dd) = (det_col(&a)?, det_col(&d)?);
        res.push(&format!("k={k} (1)"), &da.mul(&det_col(&sd)?)?.sub(&det)?);
        res.push(&format!("k={k} (2)"), &dd.mul(&det_col(&sa)?)?.sub(&det)?);
        // The reverse-order determinant of the complement goes on the right;
        // with it on the left the k=1 case already fails at t^2.
        res.push(&format!("k={k} (3)"), &da.mul(&det_col_order(&sd, &ColOrder::Reverse)?)?.sub(&det)?);
        res.push(&format!("k={k} (4)"), &dd.mul(&det_col_order(&sa, &ColOrder::Reverse)?)?.sub(&det)?);
        res.push_list(&format!("k={k} D−CA⁻¹B"), &is_manin(&sd)?);
        res.push_list(&format!("k={k} A−BD⁻¹C"), &is_manin(&sa)?);
    }
    let inv = m.inverse()?;
    let one = Series::one_in(m.ctx());
    res.push("det M·det M⁻¹ − 1", &det.mul(&det_col(&inv)?)?.sub(&one)?);
    res.push("det_rev M⁻¹·det M − 1", &det_col_order(&inv, &ColOrder::Reverse)?.mul(&det)?.sub(&one)?);
    Ok(md.outcome(ctx, res))
}

pub(super) fn jacobi_ratio(ctx: &CheckCtx) -> Result<Outcome> {
    let md = model(ctx)?;
    let (m, n) = (&md.m, ctx.n);
    let inv = m.inverse()?;
    let det_inv = det_col(m)?.inverse()?;
    let mut res = Residuals::new();
    for r in 1..=n.min(2) {
        for i in subsets1(n, r) {
            for j in subsets1(n, r) {
                let lhs = det_col(&inv.select(&i, &j))?;
                let comp = det0(&m.select(&complement(n, &j), &complement(n, &i)))?;
                let mut rhs = det_inv.mul(&comp)?;
                if (i.iter().sum::<usize>() + j.iter().sum::<usize>()) % 2 == 1 {
                    rhs = rhs.neg();
                }
                res.push(&format!("I={i:?} J={j:?}"), &lhs.sub(&rhs)?);
            }
        }
    }
    Ok(md.outcome(ctx, res))
}

pub(super) fn ldjlc(ctx: &CheckCtx) -> Result<Outcome> {
    let md = model(ctx)?;
    let (m, n) = (&md.m, ctx.n);
    let inv = m.inverse()?;
    let det_inv = det_col(m)?.inverse()?;
    let e = |i: usize, j: usize| inv.get(i - 1, j - 1);
    let mut res = Residuals::new();
    for i in 1..=n {
        for k in i + 1..=n {
            for j in 1..=n {
                res.push(&format!("[inv({i},{j}), inv({k},{j})]"), &e(i, j).commutator(e(k, j))?);
                for l in j + 1..=n {
                    let lhs = e(i, j).mul(e(k, l))?.sub(&e(k, j).mul(e(i, l))?)?;
                    let hat = m.select(&complement(n, &[j, l]), &complement(n, &[i, k]));
                    let mut rhs = det_inv.mul(&det0(&hat)?)?;
                    if (i + j + k + l) % 2 == 1 {
                        rhs = rhs.neg();
                    }
                    res.push(&format!("i={i} j={j} k={k} l={l}"), &lhs.sub(&rhs)?);
                }
            }
        }
    }
    Ok(md.outcome(ctx, res))
}

pub(super) fn inverse_manin(ctx: &CheckCtx) -> Result<Outcome> {
    let md = model(ctx)?;
    let mut res = Residuals::new();
    res.push_list("M⁻¹", &is_manin(&md.m.inverse()?)?);
    Ok(md.outcome(ctx, res))
}

pub(super) fn sylvester(ctx: &CheckCtx) -> Result<Outcome> {
    let md = model(ctx)?;
    let (m, size) = (&md.m, ctx.n);
    let piv = parse_variant(ctx, "n", 1)?;
    if piv == 0 || piv >= size {
        return Err(Error::Precondition(format!("pivot size {piv} must satisfy 0 < n < m = {size}")));
    }
    let m0 = m.block(0, piv, 0, piv);
    let d0_inv = det_col(&m0)?.inverse()?;
    let head: Vec<usize> = (1..=piv).collect();
    let b = Matrix::try_from_fn(m.ctx(), size - piv, size - piv, |i, j| {
        let mut rows = head.clone();
        rows.push(piv + i + 1);
        let mut cols = head.clone();
        cols.push(piv + j + 1);
        d0_inv.mul(&det_col(&m.select(&rows, &cols))?)
    })?;
    let mut res = Residuals::new();
    res.push("det B − det(M0)⁻¹·det M", &det_col(&b)?.sub(&d0_inv.mul(&det_col(m)?)?)?);
    res.push_list("B", &is_manin(&b)?);
    let schur = schur_complement(m, piv, Corner::Lower)?;
    res.push_matrix("B − (M3 − M2·M0⁻¹·M1)", &b.sub(&schur)?);
    Ok(md.outcome(ctx, res).param("m", size).param("n", piv))
}

pub(super) fn weinstein_aronszajn(ctx: &CheckCtx) -> Result<Outcome> {
    let degree = ctx.degree()?;
    let n = ctx.n;
    let k = parse_variant(ctx, "k", 1)?;
    if ctx.ring.is_some() {
        return Err(Error::Preset("weinstein_aronszajn runs on a fixed ring".into()));
    }
    let mut out;
    if k == 0 {
        let ring = rings::manin_generic(n, n)?;
        out = Outcome::new(&ring, Expect::Zero);
    } else {
        let ring = rings::tensor(&rings::manin_generic_sym("A", n, k)?, &rings::manin_generic_sym("B", k, n)?, true)?;
        let a = Matrix::generic(&ring, "A", n, k)?;
        let b = Matrix::generic(&ring, "B", k, n)?;
        let lhs = det_col(&one_minus_t(&a.mul(&b)?, Param::T, degree))?;
        let rhs = det_col(&one_minus_t(&b.mul(&a)?, Param::T, degree))?;
        out = Outcome::new(&ring, Expect::Zero);
        out.residuals.push("", &lhs.sub(&rhs)?);
    }
    Ok(out.param("n", n).param("k", k).param("degree", degree))
}

pub(super) fn gauss_det_check(ctx: &CheckCtx) -> Result<Outcome> {
    let md = model(ctx)?;
    let (m, n) = (&md.m, ctx.n);
    let det = det_col(m)?;
    let inv = m.inverse()?;
    let mut res = Residuals::new();
    res.push("UDL", &gauss_det(m, GaussSide::Udl)?.sub(&det)?);
    res.push("LDU", &gauss_det(m, GaussSide::Ldu)?.sub(&det)?);
    // Off-diagonal minors of 1 − tN have a singular constant term, so only
    // the diagonal quasideterminants exist in this model.
    for p in 1..=n {
        let qd = quasideterminant(m, p, p)?;
        res.push(&format!("|M|_{p}{p}·inv({p},{p}) − 1"), &qd.mul(inv.get(p - 1, p - 1))?.sub(&Series::one_in(m.ctx()))?);
    }
    Ok(md.outcome(ctx, res))
}

/// `N_i1 = x_i` and `N_il = Σ_a S⁽ˡ⁾_ia p_a` for symmetric integer `S⁽ˡ⁾`.
/// Columns Poisson-commute, and `{x_i, N_kl}` is symmetric in `i, k`, which
/// is exactly the cross relation.
fn poisson_manin_example(ring: &Arc<Ring>, n: usize) -> Result<Matrix<Poly>> {
    Matrix::try_from_fn(ring, n, n, |i, l| {
        if l == 0 {
            return Poly::gen(ring, &format!("x{}", i + 1));
        }
        let mut e = Poly::zero(ring);
        for a in 0..n {
            let s = ((i + a + 2 * l) % 3) as i64 - 1;
            e = e.add(&Poly::gen(ring, &format!("p{}", a + 1))?.scale(&Q::from_integer(s.into())))?;
        }
        Ok(e)
    })
}

pub(super) fn poisson_inverse(ctx: &CheckCtx) -> Result<Outcome> {
    let degree = ctx.degree()?;
    if ctx.ring.is_some() {
        return Err(Error::Preset("poisson_inverse runs on poisson_symplectic".into()));
    }
    let n = ctx.n;
    let ring = rings::poisson_symplectic(n)?;
    let nm = poisson_manin_example(&ring, n)?;
    let inv = series_inv_matrix(&nm, degree)?;
    let mut res = Residuals::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let label = format!("({},{}),({},{})", i + 1, j + 1, k + 1, l + 1);
                    let r = poisson_bracket(nm.get(i, j), nm.get(k, l))?
                        .sub(&poisson_bracket(nm.get(k, j), nm.get(i, l))?)?;
                    res.push(&format!("N {label}"), &r);
                    let r = poisson_bracket_series(inv.get(i, j), inv.get(k, l))?
                        .sub(&poisson_bracket_series(inv.get(k, j), inv.get(i, l))?)?;
                    res.push(&format!("M⁻¹ {label}"), &r);
                }
            }
        }
    }
    let mut out = Outcome::new(&ring, Expect::Zero).param("n", n).param("degree", degree);
    out.residuals = res;
    Ok(out)
}
