//! Block determinants of rational matrices whose blocks form a Manin matrix.

use super::basic::{fixed_ring, parse_variant};
use super::registry::CheckCtx;
use super::{Expect, Outcome, Residuals};
use crate::error::{Error, Result};
use crate::ncmatrix::{det_col, is_manin, rat_det, Alg, Matrix, RatMat};
use crate::ncpoly::render::render_rational;
use crate::ncpoly::Q;
use crate::rings;
use rand::Rng;

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `C¹·M·C² + C³` where `M_ij = α_i·R_j` is rank one with scalar `α_i`, so
/// the blocks form a Manin matrix over `Mat_m(Q)`.
pub(crate) fn random_block_manin<R: Rng>(rng: &mut R, n: usize, m: usize) -> Result<Matrix<RatMat>> {
    let alpha: Vec<Q> = (0..n).map(|_| qi(rng.gen_range(-3..=3))).collect();
    let r: Vec<RatMat> = (0..n).map(|_| RatMat::random(rng, m, 3)).collect();
    let base = Matrix::from_fn(&m, n, n, |i, j| r[j].scale(&alpha[i]));
    let scalars = |rng: &mut R| -> Vec<Vec<Q>> { (0..n).map(|_| (0..n).map(|_| qi(rng.gen_range(-2..=2))).collect()).collect() };
    let c1 = Matrix::<RatMat>::scalars(&m, &scalars(rng))?;
    let c2 = Matrix::<RatMat>::scalars(&m, &scalars(rng))?;
    let c3 = Matrix::<RatMat>::scalars(&m, &scalars(rng))?;
    c1.mul(&base)?.mul(&c2)?.add(&c3)
}

/// Flatten an `n×n` matrix of `m×m` blocks into rows of length `nm`.
fn flatten(b: &Matrix<RatMat>) -> Vec<Vec<Q>> {
    let (n, m) = (b.rows(), *b.ctx());
    let mut rows = vec![Vec::with_capacity(n * m); n * m];
    for (bi, row) in rows.chunks_mut(m).enumerate() {
        for (a, out) in row.iter_mut().enumerate() {
            for bj in 0..n {
                for c in 0..m {
                    out.push(b.get(bi, bj).get(a, c).clone());
                }
            }
        }
    }
    rows
}

pub(super) fn numeric_block_det(ctx: &CheckCtx) -> Result<Outcome> {
    fixed_ring(ctx, "numeric_block_det")?;
    let n = ctx.n;
    let m = parse_variant(ctx, "m", 2)?;
    let trials = parse_variant(ctx, "trials", 50)?;
    if m == 0 {
        return Err(Error::Precondition("block size must be positive".into()));
    }
    let mut rng = ctx.rng("numeric_block_det");
    let mut res = Residuals::new();
    for t in 0..trials {
        let blocks = random_block_manin(&mut rng, n, m)?;
        let bad = is_manin(&blocks)?;
        if !bad.is_empty() {
            return Err(Error::Precondition(format!("trial {t}: constructed blocks are not Manin ({})", bad[0].0)));
        }
        let full = rat_det(&flatten(&blocks));
        let two_step = det_col(&blocks)?.det();
        let diff = full - two_step;
        if diff != qi(0) {
            res.push_raw(&format!("trial {t}"), render_rational(&diff));
        }
    }
    let ring = rings::free_on("", vec![])?;
    let mut out = Outcome::new(&ring, Expect::Zero).param("n", n).param("m", m).param("trials", trials);
    out.ring = format!("Mat_{m}(Q)");
    out.residuals = res;
    Ok(out)
}
