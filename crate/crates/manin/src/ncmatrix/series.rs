//! Inverses, Schur complements, quasideterminants and Gauss factors of
//! matrices over truncated series.

use super::{Alg, Matrix, RatMat, SeriesCtx};
use crate::error::{Error, Result};
use crate::ncpoly::{Param, Poly, Series};

/// Which diagonal block is inverted in a Schur complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corner {
    /// `D − C·A⁻¹·B`, with `A` the leading `k×k` block.
    Lower,
    /// `A − B·D⁻¹·C`.
    Upper,
}

/// Gauss factorization shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussSide {
    /// Upper unitriangular · diagonal · lower unitriangular; `det = y_n···y_1`.
    Udl,
    /// Lower unitriangular · diagonal · upper unitriangular; `det = y_1···y_n`.
    Ldu,
}

/// `1 − t·N` as a series matrix truncated at `degree`.
pub fn one_minus_t(n: &Matrix<Poly>, param: Param, degree: usize) -> Matrix<Series> {
    let ring = n.ctx();
    let ctx = SeriesCtx {
        ring: ring.clone(),
        param,
        degree,
    };
    Matrix::from_fn(&ctx, n.rows(), n.cols(), |i, j| {
        let c0 = if i == j { Poly::one(ring) } else { Poly::zero(ring) };
        let mut coeffs = vec![c0];
        if degree >= 1 {
            coeffs.push(n.get(i, j).neg());
        }
        Series::from_coeffs(ring, param, degree, coeffs).expect("coefficients share the ring")
    })
}

/// `(1 − tN)⁻¹ = Σ_k t^k N^k` truncated at `degree`.
pub fn series_inv_matrix(n: &Matrix<Poly>, degree: usize) -> Result<Matrix<Series>> {
    if !n.is_square() {
        return Err(Error::Shape("series_inv_matrix needs a square matrix".into()));
    }
    let ring = n.ctx();
    let ctx = SeriesCtx {
        ring: ring.clone(),
        param: Param::T,
        degree,
    };
    let mut powers = vec![Matrix::identity(ring, n.rows())];
    for k in 1..=degree {
        let next = powers[k - 1].mul(n)?;
        powers.push(next);
    }
    Matrix::try_from_fn(&ctx, n.rows(), n.cols(), |i, j| {
        Series::from_coeffs(ring, Param::T, degree, powers.iter().map(|p| p.get(i, j).clone()).collect())
    })
}

impl Matrix<Series> {
    /// Two-sided inverse when the constant term is an invertible rational
    /// matrix: `X = X₀(1 − F)` gives `X⁻¹ = Σ F^k · X₀⁻¹`.
    pub fn inverse(&self) -> Result<Matrix<Series>> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut r = Vec::with_capacity(n);
            for j in 0..n {
                let c = self.get(i, j).coeff(0);
                r.push(c.as_scalar().ok_or_else(|| {
                    Error::NotInvertible(format!("constant term {} is not a scalar", c.render()))
                })?);
            }
            rows.push(r);
        }
        let x0inv = RatMat::from_rows(rows)?
            .inverse()
            .ok_or_else(|| Error::NotInvertible("constant term is a singular matrix".into()))?;
        let ctx = self.ctx().clone();
        let x0inv = Matrix::<Series>::scalars(&ctx, &x0inv.rows())?;
        let f = Matrix::identity(&ctx, n).sub(&x0inv.mul(self)?)?;
        let mut acc = Matrix::identity(&ctx, n);
        let mut p = Matrix::identity(&ctx, n);
        for _ in 0..ctx.degree {
            p = p.mul(&f)?;
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p)?;
        }
        acc.mul(&x0inv)
    }
}

fn split(m: &Matrix<Series>, k: usize) -> Result<[Matrix<Series>; 4]> {
    let n = m.rows();
    if !m.is_square() || k == 0 || k >= n {
        return Err(Error::Shape(format!("cannot split {}×{} at {k}", m.rows(), m.cols())));
    }
    Ok([m.block(0, k, 0, k), m.block(0, k, k, n), m.block(k, n, 0, k), m.block(k, n, k, n)])
}

/// Schur complement of the block partition with a leading `k×k` block.
pub fn schur_complement(m: &Matrix<Series>, k: usize, corner: Corner) -> Result<Matrix<Series>> {
    let [a, b, c, d] = split(m, k)?;
    match corner {
        Corner::Lower => d.sub(&c.mul(&a.inverse()?)?.mul(&b)?),
        Corner::Upper => a.sub(&b.mul(&d.inverse()?)?.mul(&c)?),
    }
}

/// `|A|_pq = A_pq − A_{p*}·(Â_pq)⁻¹·A_{*q}` with 1-based `p`, `q`.
pub fn quasideterminant(m: &Matrix<Series>, p: usize, q: usize) -> Result<Series> {
    let n = m.rows();
    if !m.is_square() || p == 0 || q == 0 || p > n || q > n {
        return Err(Error::Shape(format!("|A|_{p}{q} of a {}×{} matrix", m.rows(), m.cols())));
    }
    let (p, q) = (p - 1, q - 1);
    if n == 1 {
        return Ok(m.get(0, 0).clone());
    }
    let rows: Vec<usize> = (0..n).filter(|&i| i != p).collect();
    let cols: Vec<usize> = (0..n).filter(|&j| j != q).collect();
    let hat = m.submatrix(&rows, &cols).inverse()?;
    let row = m.submatrix(&[p], &cols);
    let col = m.submatrix(&rows, &[q]);
    let corr = row.mul(&hat)?.mul(&col)?;
    m.get(p, q).sub(corr.get(0, 0))
}

/// Diagonal Gauss factors `y_1..y_n` for the chosen factorization.
pub fn gauss_factors(m: &Matrix<Series>, side: GaussSide) -> Result<Vec<Series>> {
    let n = m.rows();
    (0..n)
        .map(|k| match side {
            GaussSide::Udl => quasideterminant(&m.block(k, n, k, n), 1, 1),
            GaussSide::Ldu => quasideterminant(&m.block(0, k + 1, 0, k + 1), k + 1, k + 1),
        })
        .collect()
}

/// Product of the diagonal Gauss factors in determinant order.
pub fn gauss_det(m: &Matrix<Series>, side: GaussSide) -> Result<Series> {
    if !m.is_square() {
        return Err(Error::Shape("gauss_det of a non-square matrix".into()));
    }
    let mut ys = gauss_factors(m, side)?;
    if side == GaussSide::Udl {
        ys.reverse();
    }
    let mut acc = Series::one_in(m.ctx());
    for y in ys {
        acc = acc.mul(&y)?;
    }
    Ok(acc)
}
