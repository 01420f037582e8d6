use super::{char_coeffs, Matrix};
use crate::error::{Error, Result};
use crate::ncpoly::{Poly, Q};

/// `(D, M_Frob)` with rows `v, vM, …, vM^{n−1}` in `D` and the companion
/// matrix whose last row is `((−1)^{n+1}e_n, …, −e_2, e_1)`. For a Manin
/// matrix `M_Frob·D = D·M`.
pub fn frobenius_pair(m: &Matrix<Poly>, v: &[Q]) -> Result<(Matrix<Poly>, Matrix<Poly>)> {
    let n = m.rows();
    if !m.is_square() || v.len() != n {
        return Err(Error::Shape(format!("frobenius_pair needs a square matrix and |v| = {n}")));
    }
    let ring = m.ctx();
    let mut row = Matrix::scalars(ring, &[v.to_vec()])?;
    let mut d_rows = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            row = row.mul(m)?;
        }
        d_rows.push((0..n).map(|j| row.get(0, j).clone()).collect::<Vec<_>>());
    }
    let d = Matrix::from_rows(ring, d_rows)?;
    let e = char_coeffs(m)?;
    let frob = Matrix::from_fn(ring, n, n, |i, j| {
        if i + 1 < n {
            if j == i + 1 {
                Poly::one(ring)
            } else {
                Poly::zero(ring)
            }
        } else {
            let k = n - j;
            if k % 2 == 1 {
                e[k].clone()
            } else {
                e[k].neg()
            }
        }
    });
    Ok((d, frob))
}
