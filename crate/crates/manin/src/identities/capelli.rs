//! Capelli-type identities over Weyl algebras: Cauchy–Binet with correction
//! for determinants and normalized permanents, and the one-variable toy
//! identity.

use super::basic::fixed_ring;
use super::registry::CheckCtx;
use super::{Expect, Outcome, Residuals};
use crate::error::{Error, Result};
use crate::ncmatrix::{det_col, is_manin, multiplicity_factor, multisets, perm_col, perm_norm, subsets, tuples, Matrix};
use crate::ncpoly::{Poly, Q};
use crate::rings::{self, Ring};
use rand::Rng;
use std::sync::Arc;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn one_based(v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    v.into_iter().map(|s| s.into_iter().map(|x| x + 1).collect()).collect()
}

/// A pair `(M, B)` with its correction matrix `Q`.
struct Pair {
    ring: Arc<Ring>,
    m: Matrix<Poly>,
    b: Matrix<Poly>,
    q: Matrix<Poly>,
}

fn gen(ring: &Arc<Ring>, name: String) -> Result<Poly> {
    Poly::gen(ring, &name)
}

/// `δ_il` as an `n×s` matrix, scaled by `h`.
fn delta(ring: &Arc<Ring>, n: usize, s: usize, h: i64) -> Matrix<Poly> {
    Matrix::from_fn(ring, n, s, |i, l| if i == l { Poly::int(ring, h) } else { Poly::zero(ring) })
}

/// `M = (x_ij)` for `n×m`, `B_lj = ∂/∂x_jl` for `m×s`, plus a shift `f`.
fn capelli_pair(n: usize, m: usize, s: usize, shift: Option<&mut dyn FnMut(&Arc<Ring>) -> Result<Poly>>) -> Result<Pair> {
    let ring = rings::weyl_matrix(n.max(s), m)?;
    let mm = Matrix::try_from_fn(&ring, n, m, |i, j| gen(&ring, format!("x[{},{}]", i + 1, j + 1)))?;
    let mut b = Matrix::try_from_fn(&ring, m, s, |l, j| gen(&ring, format!("d[{},{}]", j + 1, l + 1)))?;
    if let Some(f) = shift {
        for l in 0..m {
            for j in 0..s {
                let e = b.get(l, j).add(&f(&ring)?)?;
                b.set(l, j, e);
            }
        }
    }
    Ok(Pair {
        q: delta(&ring, n, s, 1),
        ring,
        m: mm,
        b,
    })
}

/// Random polynomial of degree at most one in the variables `x[i,j]`.
fn random_linear<R: Rng>(rng: &mut R, ring: &Arc<Ring>) -> Result<Poly> {
    let vars: Vec<&String> = ring.sys().names().iter().filter(|n| n.starts_with('x')).collect();
    let mut p = Poly::int(ring, rng.gen_range(-2..=2));
    for v in vars {
        let c = rng.gen_range(-2..=2);
        if c != 0 && rng.gen_bool(0.5) {
            p = p.add(&Poly::gen(ring, v)?.scale(&q(c)))?;
        }
    }
    Ok(p)
}

/// Symmetric `M_ij = x_{min,max}` with `B_ij = (1 + δ_ij)·∂_{min,max}`, `h = 1`.
fn turnbull_pair(n: usize) -> Result<Pair> {
    let (vars, ders) = upper_names(n, true);
    let ring = rings::weyl_on(&format!("sym {n}"), vars, ders)?;
    let key = |i: usize, j: usize| (i.min(j) + 1, i.max(j) + 1);
    let m = Matrix::try_from_fn(&ring, n, n, |i, j| {
        let (a, b) = key(i, j);
        gen(&ring, format!("x[{a},{b}]"))
    })?;
    let b = Matrix::try_from_fn(&ring, n, n, |i, j| {
        let (a, c) = key(i, j);
        let d = gen(&ring, format!("d[{a},{c}]"))?;
        Ok(if i == j { d.scale(&q(2)) } else { d })
    })?;
    Ok(Pair {
        q: delta(&ring, n, n, 1),
        ring,
        m,
        b,
    })
}

fn upper_names(n: usize, diagonal: bool) -> (Vec<String>, Vec<String>) {
    let mut vars = Vec::new();
    let mut ders = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            if i < j || diagonal {
                vars.push(format!("x[{i},{j}]"));
                ders.push(format!("d[{i},{j}]"));
            }
        }
    }
    (vars, ders)
}

/// `M = (x_ij)`, `B_lj = Σ_p f_ljp R_lp` with `R_lp = Σ_k x_kl ∂_kp`.
fn zero_correction_pair<R: Rng>(n: usize, rng: &mut R) -> Result<Pair> {
    let ring = rings::weyl_matrix(n, n)?;
    let x = |k: usize, l: usize| gen(&ring, format!("x[{},{}]", k + 1, l + 1));
    let d = |k: usize, l: usize| gen(&ring, format!("d[{},{}]", k + 1, l + 1));
    let r = Matrix::try_from_fn(&ring, n, n, |l, p| {
        let mut s = Poly::zero(&ring);
        for k in 0..n {
            s = s.add(&x(k, l)?.mul(&d(k, p)?)?)?;
        }
        Ok(s)
    })?;
    let m = Matrix::try_from_fn(&ring, n, n, x)?;
    let b = Matrix::try_from_fn(&ring, n, n, |l, _j| {
        let mut s = Poly::zero(&ring);
        for p in 0..n {
            s = s.add(&random_linear(rng, &ring)?.mul(r.get(l, p))?)?;
        }
        Ok(s)
    })?;
    Ok(Pair {
        q: Matrix::zeros(&ring, n, n),
        ring,
        m,
        b,
    })
}

/// `A_IJ ± Q_IJ·diag(r−1, …, 0)` for 1-based multi-indices.
fn corrected(a: &Matrix<Poly>, qm: &Matrix<Poly>, i: &[usize], j: &[usize], sign: i64) -> Result<Matrix<Poly>> {
    let r = i.len();
    let qd = qm.select(i, j);
    let diag = Matrix::diag_scalars(a.ctx(), &(0..r).map(|b| q(sign * (r - 1 - b) as i64)).collect::<Vec<_>>());
    a.select(i, j).add(&qd.mul(&diag)?)
}

/// Both conditions of the Grassmann criterion, plus the Manin property of `M`.
fn grassmann_conditions(p: &Pair, res: &mut Residuals) -> Result<()> {
    let (n, m, s) = (p.m.rows(), p.m.cols(), p.b.cols());
    let g = rings::tensor(&p.ring, &rings::grassmann(n)?, true)?;
    let (mm, b, qm) = (p.m.embed(&g)?, p.b.embed(&g)?, p.q.embed(&g)?);
    let psi = (0..n).map(|i| gen(&g, format!("psi{}", i + 1))).collect::<Result<Vec<_>>>()?;
    let apply = |a: &Matrix<Poly>, col: usize| -> Result<Poly> {
        let mut acc = Poly::zero(&g);
        for (i, ps) in psi.iter().enumerate() {
            acc = acc.add(&ps.mul(a.get(i, col))?)?;
        }
        Ok(acc)
    };
    let psi_m = (0..m).map(|l| apply(&mm, l)).collect::<Result<Vec<_>>>()?;
    let psi_q = (0..s).map(|j| apply(&qm, j)).collect::<Result<Vec<_>>>()?;
    for pp in 0..m {
        for j in 0..s {
            let mut lhs = Poly::zero(&g);
            for l in 0..m {
                lhs = lhs.add(&psi_m[l].mul(&b.get(l, j).commutator(&psi_m[pp])?)?)?;
            }
            res.push(&format!("condition 1 p={} j={}", pp + 1, j + 1), &lhs.sub(&psi_m[pp].mul(&psi_q[j])?)?);
        }
    }
    for i in 0..m {
        for j in 0..s {
            res.push(&format!("condition 2 i={} j={}", i + 1, j + 1), &psi_m[i].anticommutator(&psi_q[j])?);
        }
    }
    res.push_list("M", &is_manin(&p.m)?);
    Ok(())
}

/// Cauchy–Binet with correction for every `I` strictly increasing, every
/// `J`, and every `r ≤ min(n, s)`.
fn cauchy_binet_residuals(p: &Pair, res: &mut Residuals) -> Result<()> {
    let (n, m, s) = (p.m.rows(), p.m.cols(), p.b.cols());
    let mb = p.m.mul(&p.b)?;
    for r in 1..=n.min(s) {
        for i in one_based(subsets(n, r)) {
            for j in one_based(tuples(s, r)) {
                let lhs = det_col(&corrected(&mb, &p.q, &i, &j, 1)?)?;
                let mut rhs = Poly::zero(&p.ring);
                for l in one_based(subsets(m, r)) {
                    rhs = rhs.add(&det_col(&p.m.select(&i, &l))?.mul(&det_col(&p.b.select(&l, &j))?)?)?;
                }
                res.push(&format!("I={i:?} J={j:?}"), &lhs.sub(&rhs)?);
            }
        }
    }
    Ok(())
}

/// Parse `name(a,b,..)`.
fn parse_call(v: &str) -> Result<(String, Vec<usize>)> {
    let bad = || Error::Precondition(format!("malformed pair `{v}`"));
    let (name, rest) = v.split_once('(').ok_or_else(bad)?;
    let args = rest.strip_suffix(')').ok_or_else(bad)?;
    let nums = args
        .split(',')
        .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    if nums.contains(&0) {
        return Err(bad());
    }
    Ok((name.trim().to_string(), nums))
}

pub(super) fn capelli(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "capelli")?;
    let n = ctx.n;
    let p = capelli_pair(n, n, n, None)?;
    let mut res = Residuals::new();
    let lhs = det_col(&corrected(&p.m.mul(&p.b)?, &p.q, &(1..=n).collect::<Vec<_>>(), &(1..=n).collect::<Vec<_>>(), 1)?)?;
    res.push("det(MB + diag) − det M·det B", &lhs.sub(&det_col(&p.m)?.mul(&det_col(&p.b)?)?)?);
    let mut out = Outcome::new(&p.ring, Expect::Zero).param("n", n);
    out.residuals = res;
    Ok(out)
}

pub(super) fn cauchy_binet_det(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "cauchy_binet_det")?;
    let default = format!("capelli({0},{0},{0})", ctx.n);
    let spec = ctx.variant_or(&default);
    let (name, args) = parse_call(spec)?;
    let mut rng = ctx.rng("cauchy_binet_det");
    let mut res = Residuals::new();
    let pair = match (name.as_str(), args.as_slice()) {
        ("capelli", &[n, m, s]) => capelli_pair(n, m, s, None)?,
        ("turnbull", &[n]) => turnbull_pair(n)?,
        ("css_shift", &[n]) => {
            let mut f = |ring: &Arc<Ring>| random_linear(&mut rng, ring);
            capelli_pair(n, n, n, Some(&mut f))?
        }
        ("commuting", &[n]) => {
            let ring = rings::tensor(&rings::manin_generic(n, n)?, &rings::manin_generic_sym("B", n, n)?, true)?;
            let p = Pair {
                m: Matrix::generic(&ring, "M", n, n)?,
                b: Matrix::generic(&ring, "B", n, n)?,
                q: Matrix::zeros(&ring, n, n),
                ring,
            };
            res.push_list("MB", &is_manin(&p.m.mul(&p.b)?)?);
            p
        }
        ("zero_correction", &[n]) => {
            let p = zero_correction_pair(n, &mut rng)?;
            let mb = p.m.mul(&p.b)?;
            res.push("det(MB) − det M·det B", &det_col(&mb)?.sub(&det_col(&p.m)?.mul(&det_col(&p.b)?)?)?);
            // MB is Manin only when B is as well.
            if is_manin(&p.b)?.is_empty() {
                res.push_list("MB", &is_manin(&mb)?);
            }
            p
        }
        _ => return Err(Error::Precondition(format!("unknown pair `{spec}`"))),
    };
    grassmann_conditions(&pair, &mut res)?;
    cauchy_binet_residuals(&pair, &mut res)?;
    let mut out = Outcome::new(&pair.ring, Expect::Zero).param("pair", spec.to_string());
    out.residuals = res;
    Ok(out)
}

/// Permanent Cauchy–Binet: `left` is `n×m` (the transpose of a Manin matrix,
/// or an antisymmetric matrix), `b` is `m×s`, all `I` weakly increasing,
/// all `J`, and `L` weakly increasing.
fn perm_residuals(left: &Matrix<Poly>, b: &Matrix<Poly>, qm: &Matrix<Poly>, r_max: usize, res: &mut Residuals) -> Result<()> {
    let (n, m, s) = (left.rows(), left.cols(), b.cols());
    let ring = left.ctx().clone();
    let prod = left.mul(b)?;
    for r in 1..=r_max.min(n).min(s) {
        for i in one_based(multisets(n, r)) {
            let norm = Q::from_integer(1.into()) / multiplicity_factor(&i);
            for j in one_based(tuples(s, r)) {
                let lhs = perm_col(&corrected(&prod, qm, &i, &j, -1)?)?.scale(&norm);
                let mut rhs = Poly::zero(&ring);
                for l in one_based(multisets(m, r)) {
                    rhs = rhs.add(&perm_norm(left, &i, &l)?.mul(&perm_norm(b, &l, &j)?)?)?;
                }
                res.push(&format!("I={i:?} J={j:?}"), &lhs.sub(&rhs)?);
            }
        }
    }
    Ok(())
}

pub(super) fn cauchy_binet_perm(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "cauchy_binet_perm")?;
    let default = format!("capelli({})", ctx.n);
    let spec = ctx.variant_or(&default);
    let (name, args) = parse_call(spec)?;
    let mut res = Residuals::new();
    let ring = match (name.as_str(), args.as_slice()) {
        ("commuting", &[n]) => {
            let ring = rings::tensor(&rings::manin_generic(n, n)?, &rings::free_sym("B", n, n)?, true)?;
            let m = Matrix::generic(&ring, "M", n, n)?;
            let b = Matrix::generic(&ring, "B", n, n)?;
            perm_residuals(&m.transpose(), &b, &Matrix::zeros(&ring, n, n), n, &mut res)?;
            ring
        }
        ("capelli", &[n]) => {
            if n < 2 {
                return Err(Error::Precondition(
                    "the permanent identity with correction needs n > 1; for n = 1 it also requires [M11, [M11, B1i]] = 0".into(),
                ));
            }
            let ring = rings::weyl_matrix(n, n)?;
            let x = Matrix::try_from_fn(&ring, n, n, |i, j| gen(&ring, format!("x[{},{}]", i + 1, j + 1)))?;
            let b = Matrix::try_from_fn(&ring, n, n, |k, l| gen(&ring, format!("d[{},{}]", k + 1, l + 1)))?;
            perm_residuals(&x.transpose(), &b, &delta(&ring, n, n, 1), n, &mut res)?;
            ring
        }
        ("antisymmetric", &[n]) => {
            if n < 3 {
                return Err(Error::Precondition(
                    "the antisymmetric permanent identity needs n > 2; for n = 2 it also requires [M12, h] = 0".into(),
                ));
            }
            let (vars, ders) = upper_names(n, false);
            let ring = rings::weyl_on(&format!("antisym {n}"), vars, ders)?;
            let m = Matrix::try_from_fn(&ring, n, n, |i, j| {
                Ok(match i.cmp(&j) {
                    std::cmp::Ordering::Less => gen(&ring, format!("x[{},{}]", i + 1, j + 1))?,
                    std::cmp::Ordering::Greater => gen(&ring, format!("x[{},{}]", j + 1, i + 1))?.neg(),
                    std::cmp::Ordering::Equal => Poly::zero(&ring),
                })
            })?;
            let b = Matrix::try_from_fn(&ring, n, n, |i, j| {
                Ok(match i.cmp(&j) {
                    std::cmp::Ordering::Less => gen(&ring, format!("d[{},{}]", i + 1, j + 1))?.neg(),
                    std::cmp::Ordering::Greater => gen(&ring, format!("d[{},{}]", j + 1, i + 1))?,
                    std::cmp::Ordering::Equal => Poly::zero(&ring),
                })
            })?;
            perm_residuals(&m, &b, &delta(&ring, n, n, 1), n, &mut res)?;
            ring
        }
        _ => return Err(Error::Precondition(format!("unknown pair `{spec}`"))),
    };
    let mut out = Outcome::new(&ring, Expect::Zero).param("pair", spec.to_string());
    out.residuals = res;
    Ok(out)
}

/// `(MB − (r−1)Q)···(MB − Q)·MB − M^r B^r` with `Q = [B, M]`.
fn toy_residual(m: &Poly, b: &Poly, r: usize) -> Result<Poly> {
    let ring = m.ring();
    let qq = b.commutator(m)?;
    let mb = m.mul(b)?;
    let mut lhs = Poly::one(ring);
    for k in 0..r {
        lhs = mb.sub(&qq.scale(&q(k as i64)))?.mul(&lhs)?;
    }
    lhs.sub(&m.pow(r as u32)?.mul(&b.pow(r as u32)?)?)
}

pub(super) fn toy_identity(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "toy_identity")?;
    let r = ctx.n;
    let weyl = rings::weyl(1)?;
    let pair = rings::toy_pair()?;
    let mut res = Residuals::new();
    res.push("∂, z", &toy_residual(&Poly::gen(&weyl, "d1")?, &Poly::gen(&weyl, "x1")?, r)?);
    res.push("toy_pair", &toy_residual(&Poly::gen(&pair, "M")?, &Poly::gen(&pair, "B")?, r)?);
    let mut out = Outcome::new(&weyl, Expect::Zero).param("r", r);
    out.ring = "weyl(1), toy_pair".into();
    out.residuals = res;
    Ok(out)
}
