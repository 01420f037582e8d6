//! Randomized structural checks on Manin matrices built from rank-one and
//! Cartier–Foata patterns.

use super::registry::CheckCtx;
use super::{judge, Expect, Outcome, Report, Residuals};
use crate::error::{Error, Result};
use crate::ncmatrix::{det_col, is_manin, Matrix};
use crate::ncpoly::{Poly, Q};
use crate::rings::{self, Ring};
use rand::Rng;
use rayon::prelude::*;
use std::sync::Arc;

/// How many failing instances a report lists before truncating.
const SHOWN: usize = 10;

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    /// Restrict to one kind: `rank_one`, `closure_rank_one` or
    /// `closure_cartier_foata`.
    pub kind: Option<String>,
    /// Restrict to one invariant: `is_manin`, `column_antisymmetry` or
    /// `multiplicativity`.
    pub invariant: Option<String>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            n: 3,
            count: 100,
            seed: 0,
            kind: None,
            invariant: None,
        }
    }
}

pub const KINDS: [&str; 3] = ["rank_one", "closure_rank_one", "closure_cartier_foata"];
pub const INVARIANTS: [&str; 3] = ["is_manin", "column_antisymmetry", "multiplicativity"];

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn rank_one_ring(n: usize) -> Result<Arc<Ring>> {
    let xs = (1..=n).map(|i| format!("x{i}")).collect();
    let ys = (1..=n).map(|i| format!("y{i}")).collect();
    rings::tensor(&rings::commutative_on("x", xs)?, &rings::free_on("y", ys)?, true)
}

fn random_scalars<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Q>> {
    (0..n).map(|_| (0..n).map(|_| qi(rng.gen_range(-2..=2))).collect()).collect()
}

/// Random rational combination of the generators `{sym}1..{sym}n`.
fn combination<R: Rng>(rng: &mut R, ring: &Arc<Ring>, sym: &str, n: usize) -> Result<Poly> {
    let mut p = Poly::zero(ring);
    for i in 1..=n {
        let c = Q::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=2).into());
        p = p.add(&Poly::gen(ring, &format!("{sym}{i}"))?.scale(&c))?;
    }
    Ok(p)
}

/// `M_ij = u_i·v_j` with the `u_i` central.
fn rank_one<R: Rng>(rng: &mut R, ring: &Arc<Ring>, n: usize) -> Result<Matrix<Poly>> {
    let u = (0..n).map(|_| combination(rng, ring, "x", n)).collect::<Result<Vec<_>>>()?;
    let v = (0..n).map(|_| combination(rng, ring, "y", n)).collect::<Result<Vec<_>>>()?;
    Matrix::try_from_fn(ring, n, n, |i, j| u[i].mul(&v[j]))
}

fn closure<R: Rng>(rng: &mut R, m: &Matrix<Poly>) -> Result<Matrix<Poly>> {
    let n = m.rows();
    let c1 = Matrix::scalars(m.ctx(), &random_scalars(rng, n))?;
    let c2 = Matrix::scalars(m.ctx(), &random_scalars(rng, n))?;
    let c3 = Matrix::scalars(m.ctx(), &random_scalars(rng, n))?;
    c1.mul(m)?.mul(&c2)?.add(&c3)
}

fn instance(kind: &str, n: usize, ctx: &CheckCtx) -> Result<(Matrix<Poly>, Vec<Vec<Q>>, [usize; 2])> {
    let mut rng = ctx.rng("fuzz");
    let m = match kind {
        "rank_one" => rank_one(&mut rng, &rank_one_ring(n)?, n)?,
        "closure_rank_one" => {
            let base = rank_one(&mut rng, &rank_one_ring(n)?, n)?;
            closure(&mut rng, &base)?
        }
        "closure_cartier_foata" => closure(&mut rng, &Matrix::generic(&rings::cartier_foata(n, n)?, "M", n, n)?)?,
        other => return Err(Error::Precondition(format!("unknown fuzz kind `{other}`; expected one of {KINDS:?}"))),
    };
    let c = random_scalars(&mut rng, n);
    let a = rng.gen_range(0..n);
    let b = (a + rng.gen_range(1..n)) % n;
    Ok((m, c, [a, b]))
}

/// Residuals of one invariant on one instance.
fn run_one(inv: &str, m: &Matrix<Poly>, c: &[Vec<Q>], swap: [usize; 2]) -> Result<Residuals> {
    let mut res = Residuals::new();
    match inv {
        "is_manin" => res.push_list("", &is_manin(m)?),
        "column_antisymmetry" => {
            let mut perm: Vec<usize> = (0..m.rows()).collect();
            perm.swap(swap[0], swap[1]);
            let r = det_col(&m.permute_cols(&perm))?.add(&det_col(m)?)?;
            res.push(&format!("swap {},{}", swap[0] + 1, swap[1] + 1), &r);
        }
        _ => {
            let d = det_col(m)?;
            let cm = Matrix::scalars(m.ctx(), c)?;
            let dc = det_col(&cm)?;
            res.push("det(MC)", &det_col(&m.mul(&cm)?)?.sub(&d.mul(&dc)?)?);
            res.push("det(CM)", &det_col(&cm.mul(m)?)?.sub(&dc.mul(&d)?)?);
        }
    }
    Ok(res)
}

fn pick<'a>(what: &str, choice: &'a Option<String>, all: &[&'a str]) -> Result<Vec<&'a str>> {
    match choice {
        Some(k) if all.contains(&k.as_str()) => Ok(vec![k.as_str()]),
        Some(k) => Err(Error::Precondition(format!("unknown fuzz {what} `{k}`; expected one of {all:?}"))),
        None => Ok(all.to_vec()),
    }
}

/// Generate instances of each kind and report one line per
/// (kind, invariant). Output depends only on the configuration.
pub fn fuzz(cfg: &FuzzConfig) -> Result<Vec<Report>> {
    if cfg.n < 2 {
        return Err(Error::Precondition("fuzzing needs n ≥ 2".into()));
    }
    let kinds = pick("kind", &cfg.kind, &KINDS)?;
    let invariants = pick("invariant", &cfg.invariant, &INVARIANTS)?;
    let mut reports = Vec::new();
    for kind in kinds {
        let per: Vec<Vec<Residuals>> = (0..cfg.count)
            .into_par_iter()
            .map(|k| {
                let mut ctx = CheckCtx::new(cfg.n);
                ctx.seed = cfg.seed;
                ctx.variant = Some(format!("{kind}#{k}"));
                let (m, c, swap) = instance(kind, cfg.n, &ctx)?;
                invariants.iter().map(|inv| run_one(inv, &m, &c, swap)).collect()
            })
            .collect::<Result<_>>()?;
        let ring = match kind {
            "closure_cartier_foata" => rings::cartier_foata(cfg.n, cfg.n)?,
            _ => rank_one_ring(cfg.n)?,
        };
        for (v, inv) in invariants.iter().enumerate() {
            let mut res = Residuals::new();
            let mut failed = 0;
            for (k, r) in per.iter().enumerate() {
                if r[v].is_empty() {
                    continue;
                }
                failed += 1;
                if failed <= SHOWN {
                    for (l, x) in &r[v].0 {
                        res.push_raw(format!("#{k} {l}").trim_end(), x.clone());
                    }
                }
            }
            if failed > SHOWN {
                res.push_raw("truncated", format!("{} more failing instances", failed - SHOWN));
            }
            let mut out = Outcome::new(&ring, Expect::Zero)
                .param("kind", kind)
                .param("invariant", *inv)
                .param("n", cfg.n)
                .param("count", cfg.count)
                .param("seed", cfg.seed);
            out.residuals = res;
            reports.push(judge("fuzz", out, None, None)?);
        }
    }
    Ok(reports)
}
