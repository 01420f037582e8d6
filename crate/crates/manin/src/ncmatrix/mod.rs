//! Matrices over noncommutative algebras.
//!
//! Everything here is generic over [`Alg`], so the same determinant code runs
//! over polynomials, truncated series (the `1 − tN` model for inverses) and
//! rational matrices (numeric block determinants). Entry products always keep
//! left-to-right order: `(AB)_ik = Σ_j A_ij·B_jk`.

mod det;
mod frobenius;
mod manin;
mod numeric;
mod series;
mod tensor;

pub use det::{
    adjugate, char_coeffs, char_coeffs_by_minors, det_col, det_col_laplace, det_col_order,
    det_col_perm_sum, det_row, minor, perm_col, perm_norm, perm_row, permutations,
    permutation_sign, trace_power, trace_sym_power, trace_sym_power_sorted, ColOrder, Functional,
};
pub(crate) use det::{multiplicity_factor, multisets, subsets, tuples};
pub use frobenius::frobenius_pair;
pub use manin::{coaction_check, is_manin, is_q_manin, is_qg_matrix, CoactionKind};
pub use numeric::{rat_det, RatMat};
pub use series::{gauss_det, gauss_factors, one_minus_t, quasideterminant, schur_complement, series_inv_matrix, Corner, GaussSide};
pub use tensor::{antisymmetrizer, kron_left, kron_right, swap_p, symmetrizer, tensor_power_factor, MAX_TENSOR_POWER};

use crate::error::{Error, Result};
use crate::ncpoly::{Param, Poly, Series, Q};
use crate::rings::Ring;
use num_traits::One;
use std::fmt;
use std::sync::Arc;

/// An associative algebra over the rationals with fallible operations.
pub trait Alg: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Ctx: Clone + fmt::Debug + Send + Sync;
    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn scalar_in(ctx: &Self::Ctx, c: &Q) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Q) -> Self;
    /// Nonzero parts as `(label, rendering)`; empty for zero.
    fn components(&self) -> Vec<(String, String)>;

    fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    fn one_in(ctx: &Self::Ctx) -> Self {
        Self::scalar_in(ctx, &Q::one())
    }

    fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }
}

impl Alg for Poly {
    type Ctx = Arc<Ring>;
    fn ctx(&self) -> Arc<Ring> {
        self.ring().clone()
    }
    fn zero_in(ctx: &Arc<Ring>) -> Self {
        Poly::zero(ctx)
    }
    fn scalar_in(ctx: &Arc<Ring>, c: &Q) -> Self {
        Poly::scalar(ctx, c.clone())
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Poly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Poly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Poly::mul(self, o)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn scale(&self, c: &Q) -> Self {
        Poly::scale(self, c)
    }
    fn components(&self) -> Vec<(String, String)> {
        if self.is_zero() {
            vec![]
        } else {
            vec![(String::new(), self.render())]
        }
    }
}

/// Context of a truncated series: ring, parameter and truncation degree.
#[derive(Clone, Debug)]
pub struct SeriesCtx {
    pub ring: Arc<Ring>,
    pub param: Param,
    pub degree: usize,
}

impl Alg for Series {
    type Ctx = SeriesCtx;
    fn ctx(&self) -> SeriesCtx {
        SeriesCtx {
            ring: self.ring().clone(),
            param: self.param(),
            degree: self.degree(),
        }
    }
    fn zero_in(ctx: &SeriesCtx) -> Self {
        Series::zero(&ctx.ring, ctx.param, ctx.degree)
    }
    fn scalar_in(ctx: &SeriesCtx, c: &Q) -> Self {
        Series::constant(Poly::scalar(&ctx.ring, c.clone()), ctx.param, ctx.degree)
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Series::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Series::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Series::mul(self, o)
    }
    fn neg(&self) -> Self {
        Series::neg(self)
    }
    fn scale(&self, c: &Q) -> Self {
        Series::scale(self, c)
    }
    fn components(&self) -> Vec<(String, String)> {
        Series::components(self)
    }
}

/// A dense `rows×cols` matrix over an [`Alg`].
#[derive(Clone)]
pub struct Matrix<T: Alg> {
    rows: usize,
    cols: usize,
    ctx: T::Ctx,
    data: Vec<T>,
}

impl<T: Alg> PartialEq for Matrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<T: Alg> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for i in 0..self.rows {
            l.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        l.finish()
    }
}

impl<T: Alg> Matrix<T> {
    pub fn from_fn<F: FnMut(usize, usize) -> T>(ctx: &T::Ctx, rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            ctx: ctx.clone(),
            data,
        }
    }

    pub fn try_from_fn<F: FnMut(usize, usize) -> Result<T>>(ctx: &T::Ctx, rows: usize, cols: usize, mut f: F) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(Matrix {
            rows,
            cols,
            ctx: ctx.clone(),
            data,
        })
    }

    pub fn from_rows(ctx: &T::Ctx, rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            ctx: ctx.clone(),
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(ctx: &T::Ctx, rows: usize, cols: usize) -> Self {
        Self::from_fn(ctx, rows, cols, |_, _| T::zero_in(ctx))
    }

    pub fn identity(ctx: &T::Ctx, n: usize) -> Self {
        Self::from_fn(ctx, n, n, |i, j| if i == j { T::one_in(ctx) } else { T::zero_in(ctx) })
    }

    /// Diagonal matrix of rational scalars.
    pub fn diag_scalars(ctx: &T::Ctx, d: &[Q]) -> Self {
        let n = d.len();
        Self::from_fn(ctx, n, n, |i, j| if i == j { T::scalar_in(ctx, &d[i]) } else { T::zero_in(ctx) })
    }

    /// Matrix of rational scalars.
    pub fn scalars(ctx: &T::Ctx, m: &[Vec<Q>]) -> Result<Self> {
        Self::from_rows(ctx, m.iter().map(|r| r.iter().map(|c| T::scalar_in(ctx, c)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data.iter().enumerate().map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    fn same_shape(&self, o: &Self, what: &str) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!(
                "{what}: {}×{} vs {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o, "add")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o, "sub")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        Matrix {
            data: self.data.iter().map(T::neg).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Matrix {
            data: self.data.iter().map(|x| x.scale(c)).collect(),
            ..self.clone()
        }
    }

    /// Multiply every entry on the left by `x`.
    pub fn left_mul_entry(&self, x: &T) -> Result<Self> {
        Ok(Matrix {
            data: self.data.iter().map(|e| x.mul(e)).collect::<Result<_>>()?,
            ..self.clone()
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "mul: {}×{} by {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Self::try_from_fn(&self.ctx, self.rows, o.cols, |i, k| {
            let mut s = T::zero_in(&self.ctx);
            for j in 0..self.cols {
                let (a, b) = (self.get(i, j), o.get(j, k));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                s = s.add(&a.mul(b)?)?;
            }
            Ok(s)
        })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("pow of a non-square matrix".into()));
        }
        let mut out = Self::identity(&self.ctx, self.rows);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `AB − BA`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Result<T> {
        let mut s = T::zero_in(&self.ctx);
        for i in 0..self.rows.min(self.cols) {
            s = s.add(self.get(i, i))?;
        }
        Ok(s)
    }

    /// Rows and columns by 0-based position. Positions past the edge select
    /// zero rows or columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.ctx, rows.len(), cols.len(), |a, b| {
            let (i, j) = (rows[a], cols[b]);
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else {
                T::zero_in(&self.ctx)
            }
        })
    }

    /// `A_IJ` with 1-based multi-indices; repeats allowed, out-of-range
    /// positions give zeros.
    pub fn select(&self, i: &[usize], j: &[usize]) -> Self {
        let to0 = |v: &[usize]| v.iter().map(|&x| x.wrapping_sub(1)).collect::<Vec<_>>();
        self.submatrix(&to0(i), &to0(j))
    }

    /// Delete one row and one column (0-based).
    pub fn without(&self, row: usize, col: usize) -> Self {
        let r: Vec<usize> = (0..self.rows).filter(|&i| i != row).collect();
        let c: Vec<usize> = (0..self.cols).filter(|&j| j != col).collect();
        self.submatrix(&r, &c)
    }

    /// Contiguous block `[r0, r1) × [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let r: Vec<usize> = (r0..r1).collect();
        let c: Vec<usize> = (c0..c1).collect();
        self.submatrix(&r, &c)
    }

    /// `[[a, b], [c, d]]` from blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::Shape("incompatible blocks".into()));
        }
        let (r, k) = (a.rows, a.cols);
        Ok(Self::from_fn(&a.ctx, a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < r, j < k) {
                (true, true) => a.get(i, j).clone(),
                (true, false) => b.get(i, j - k).clone(),
                (false, true) => c.get(i - r, j).clone(),
                (false, false) => d.get(i - r, j - k).clone(),
            }
        }))
    }

    /// Reorder columns: column `b` of the result is column `perm[b]`.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        let r: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&r, perm)
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let c: Vec<usize> = (0..self.cols).collect();
        self.submatrix(perm, &c)
    }

    pub fn map<U: Alg, F: FnMut(&T) -> Result<U>>(&self, ctx: &U::Ctx, mut f: F) -> Result<Matrix<U>> {
        Matrix::try_from_fn(ctx, self.rows, self.cols, |i, j| f(self.get(i, j)))
    }

    /// Nonzero entries as labelled residual components, 1-based labels.
    pub fn residuals(&self, label: &str) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, j, v) in self.entries() {
            for (sub, r) in v.components() {
                let mut l = format!("{label}({},{})", i + 1, j + 1);
                if !sub.is_empty() {
                    l.push(' ');
                    l.push_str(&sub);
                }
                out.push((l, r));
            }
        }
        out
    }
}

impl Matrix<Poly> {
    /// Matrix whose entries are the named generators `sym[i,j]`.
    pub fn generic(ring: &Arc<Ring>, sym: &str, rows: usize, cols: usize) -> Result<Self> {
        Self::try_from_fn(ring, rows, cols, |i, j| Poly::gen(ring, &format!("{sym}[{},{}]", i + 1, j + 1)))
    }

    /// Parse entries from canonical renderings.
    pub fn parse(ring: &Arc<Ring>, rows: &[&[&str]]) -> Result<Self> {
        Self::from_rows(
            ring,
            rows.iter()
                .map(|r| r.iter().map(|s| Poly::parse(ring, s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn embed(&self, ring: &Arc<Ring>) -> Result<Self> {
        self.map(ring, |p| p.embed(ring))
    }

    /// JSON form `{ring, rows, cols, entries}` with canonical renderings.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).render()).collect())
            .collect();
        serde_json::json!({
            "ring": self.ctx.name(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": entries,
        })
    }

    pub fn from_json(ring: &Arc<Ring>, v: &serde_json::Value) -> Result<Self> {
        let entries = v
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or_else(|| Error::Parse("missing `entries`".into()))?;
        let rows = entries
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("row is not an array".into()))?
                    .iter()
                    .map(|s| {
                        s.as_str()
                            .ok_or_else(|| Error::Parse("entry is not a string".into()))
                            .and_then(|s| Poly::parse(ring, s))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }

    /// Lift to constant series.
    pub fn to_series(&self, param: Param, degree: usize) -> Matrix<Series> {
        let ctx = SeriesCtx {
            ring: self.ctx.clone(),
            param,
            degree,
        };
        Matrix::from_fn(&ctx, self.rows, self.cols, |i, j| Series::constant(self.get(i, j).clone(), param, degree))
    }
}

impl Matrix<Series> {
    /// The matrix of `param^k` coefficients.
    pub fn coeff(&self, k: usize) -> Matrix<Poly> {
        Matrix::from_fn(&self.ctx.ring, self.rows, self.cols, |i, j| self.get(i, j).coeff(k))
    }

    pub fn degree(&self) -> usize {
        self.ctx.degree
    }

    pub fn with_degree(&self, degree: usize) -> Matrix<Series> {
        let ctx = SeriesCtx {
            degree,
            ..self.ctx.clone()
        };
        Matrix::from_fn(&ctx, self.rows, self.cols, |i, j| self.get(i, j).with_degree(degree))
    }
}

pub(crate) fn factorial(k: usize) -> Q {
    (1..=k).fold(Q::one(), |acc, i| acc * Q::from_integer(i.into()))
}
