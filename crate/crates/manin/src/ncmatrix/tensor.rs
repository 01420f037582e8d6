//! Kronecker-structured operators on `(C^n)^{⊗m}`.
//!
//! Basis vectors `e_{i_1}⊗…⊗e_{i_m}` are ranked lexicographically, so for
//! `m = 2` the 1-based rank of `e_i⊗e_j` is `(i−1)n + j`.

use super::{permutations, Alg, Matrix};
use crate::error::{Error, Result};
use crate::ncpoly::Q;

/// Largest tensor power accepted by the (anti)symmetrizers.
pub const MAX_TENSOR_POWER: usize = 3;

fn digits(mut idx: usize, n: usize, m: usize) -> Vec<usize> {
    let mut d = vec![0; m];
    for a in (0..m).rev() {
        d[a] = idx % n;
        idx /= n;
    }
    d
}

/// `1⊗…⊗M⊗…⊗1` with `M` in slot `pos` (0-based) of an `m`-fold product.
pub fn tensor_power_factor<T: Alg>(mat: &Matrix<T>, m: usize, pos: usize) -> Result<Matrix<T>> {
    if !mat.is_square() || pos >= m {
        return Err(Error::Shape(format!("slot {pos} of a {m}-fold tensor power")));
    }
    let n = mat.rows();
    let dim = n.pow(m as u32);
    let ctx = mat.ctx();
    Ok(Matrix::from_fn(ctx, dim, dim, |r, c| {
        let (a, b) = (digits(r, n, m), digits(c, n, m));
        if (0..m).all(|s| s == pos || a[s] == b[s]) {
            mat.get(a[pos], b[pos]).clone()
        } else {
            T::zero_in(ctx)
        }
    }))
}

/// `M⊗1` on `C^n⊗C^n`.
pub fn kron_left<T: Alg>(mat: &Matrix<T>) -> Result<Matrix<T>> {
    tensor_power_factor(mat, 2, 0)
}

/// `1⊗M` on `C^n⊗C^n`.
pub fn kron_right<T: Alg>(mat: &Matrix<T>) -> Result<Matrix<T>> {
    tensor_power_factor(mat, 2, 1)
}

/// `P(e_i⊗e_j) = e_j⊗e_i`.
pub fn swap_p<T: Alg>(ctx: &T::Ctx, n: usize) -> Matrix<T> {
    Matrix::from_fn(ctx, n * n, n * n, |r, c| {
        if r == (c % n) * n + c / n {
            T::one_in(ctx)
        } else {
            T::zero_in(ctx)
        }
    })
}

fn permutation_sum<T: Alg>(ctx: &T::Ctx, n: usize, m: usize, signed: bool) -> Result<Matrix<T>> {
    if m > MAX_TENSOR_POWER {
        return Err(Error::Precondition(format!(
            "tensor power {m} exceeds {MAX_TENSOR_POWER}"
        )));
    }
    let dim = n.pow(m as u32);
    let perms = permutations(m);
    Ok(Matrix::from_fn(ctx, dim, dim, |r, c| {
        let (a, b) = (digits(r, n, m), digits(c, n, m));
        let mut s = 0i64;
        for (p, sg) in &perms {
            if (0..m).all(|k| a[k] == b[p[k]]) {
                s += if signed { i64::from(*sg) } else { 1 };
            }
        }
        if s == 0 {
            T::zero_in(ctx)
        } else {
            T::scalar_in(ctx, &Q::from_integer(s.into()))
        }
    }))
}

/// `A_m = Σ_σ (−1)^σ σ` on `(C^n)^{⊗m}`, `m ≤ 3`.
pub fn antisymmetrizer<T: Alg>(ctx: &T::Ctx, n: usize, m: usize) -> Result<Matrix<T>> {
    permutation_sum(ctx, n, m, true)
}

/// `S_m = Σ_σ σ` on `(C^n)^{⊗m}`, `m ≤ 3`.
pub fn symmetrizer<T: Alg>(ctx: &T::Ctx, n: usize, m: usize) -> Result<Matrix<T>> {
    permutation_sum(ctx, n, m, false)
}
