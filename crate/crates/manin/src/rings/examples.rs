//! Constructors for the standard example Manin matrices.

use super::{cartier_foata, free_on, gl_pbw, laurent_weyl, manin_generic, manin_generic_transpose, matrix_names, tensor, weyl_matrix, weyl_on, weyl};
use crate::error::{Error, Result};
use crate::ncmatrix::Matrix;
use crate::ncpoly::{Poly, Q};

#[derive(Clone, Debug, PartialEq)]
pub enum ExampleKind {
    /// `[[X, ∂_Y], [Y, ∂_X]]` for `n×k` variable matrices `X`, `Y`.
    CapelliXyBlock { n: usize, k: usize },
    /// `[[z·1_k, (∂_Y)^t], [Y, ∂_z·1_n]]`.
    CapelliZBlock { n: usize, k: usize },
    /// The `n×m` matrix of variables `x[i,j]` in the Weyl algebra.
    CapelliXd { n: usize, m: usize },
    /// `∂_z·1 + K − z^{-1}·(y_i ∂_{y_j})` with a constant `n×n` matrix `K`.
    GaudinSimple { k1: Vec<Vec<Q>> },
    /// `∂_z·1 − z^{-1}·(e_ij)` over Diff(z) ⊗ U(gl_n).
    GlNLax { n: usize },
    /// Every row equal to `(r1, …, rn)` with free `r_i`.
    RankOne { n: usize },
    CartierFoataGeneric { n: usize },
    ManinGeneric { n: usize },
    ManinGenericTranspose { n: usize },
}

impl ExampleKind {
    /// Parse a kind name with positional size parameters.
    pub fn from_name(name: &str, params: &[usize]) -> Result<Self> {
        let p = |i: usize| -> Result<usize> {
            params
                .get(i)
                .copied()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::UnknownExample(format!("`{name}` needs {} positive parameter(s)", i + 1)))
        };
        Ok(match name {
            "capelli_xy_block" => ExampleKind::CapelliXyBlock { n: p(0)?, k: p(1)? },
            "capelli_z_block" => ExampleKind::CapelliZBlock { n: p(0)?, k: p(1)? },
            "capelli_xd" => ExampleKind::CapelliXd { n: p(0)?, m: p(1)? },
            "gaudin_simple" => {
                let n = p(0)?;
                ExampleKind::GaudinSimple {
                    k1: vec![vec![Q::from_integer(0.into()); n]; n],
                }
            }
            "glN_lax" | "gln_lax" => ExampleKind::GlNLax { n: p(0)? },
            "rank_one" => ExampleKind::RankOne { n: p(0)? },
            "cartier_foata_generic" => ExampleKind::CartierFoataGeneric { n: p(0)? },
            "manin_generic" => ExampleKind::ManinGeneric { n: p(0)? },
            "manin_generic_transpose" => ExampleKind::ManinGenericTranspose { n: p(0)? },
            other => return Err(Error::UnknownExample(other.to_string())),
        })
    }

    /// True when the example is Manin only after transposition.
    pub fn transpose_manin(&self) -> bool {
        matches!(self, ExampleKind::ManinGenericTranspose { .. })
    }
}

fn names(sym: &str, n: usize, m: usize) -> Vec<String> {
    matrix_names(sym, n, m)
}

/// Build the example matrix over its natural ring.
pub fn example_matrix(kind: &ExampleKind) -> Result<Matrix<Poly>> {
    match kind {
        ExampleKind::CapelliXyBlock { n, k } => {
            let (n, k) = (*n, *k);
            let mut vars = names("x", n, k);
            vars.extend(names("y", n, k));
            let mut ders = names("dx", n, k);
            ders.extend(names("dy", n, k));
            let ring = weyl_on(&format!("x,y {n}×{k}"), vars, ders)?;
            Matrix::try_from_fn(&ring, 2 * n, 2 * k, |i, j| {
                let (top, left) = (i < n, j < k);
                let (r, c) = (i % n + 1, j % k + 1);
                let sym = match (top, left) {
                    (true, true) => "x",
                    (true, false) => "dy",
                    (false, true) => "y",
                    (false, false) => "dx",
                };
                Poly::gen(&ring, &format!("{sym}[{r},{c}]"))
            })
        }
        ExampleKind::CapelliZBlock { n, k } => {
            let (n, k) = (*n, *k);
            let mut vars = vec!["z".to_string()];
            vars.extend(names("y", n, k));
            let mut ders = vec!["dz".to_string()];
            ders.extend(names("dy", n, k));
            let ring = weyl_on(&format!("z,y {n}×{k}"), vars, ders)?;
            Matrix::try_from_fn(&ring, n + k, n + k, |i, j| match (i < k, j < k) {
                (true, true) => Ok(if i == j { Poly::gen(&ring, "z")? } else { Poly::zero(&ring) }),
                (true, false) => Poly::gen(&ring, &format!("dy[{},{}]", j - k + 1, i + 1)),
                (false, true) => Poly::gen(&ring, &format!("y[{},{}]", i - k + 1, j + 1)),
                (false, false) => Ok(if i == j { Poly::gen(&ring, "dz")? } else { Poly::zero(&ring) }),
            })
        }
        ExampleKind::CapelliXd { n, m } => {
            let ring = weyl_matrix(*n, *m)?;
            Matrix::generic(&ring, "x", *n, *m)
        }
        ExampleKind::GaudinSimple { k1 } => {
            let n = k1.len();
            if k1.iter().any(|r| r.len() != n) {
                return Err(Error::Shape("K must be square".into()));
            }
            let ring = tensor(&laurent_weyl()?, &weyl(n)?, true)?;
            let dz = Poly::gen(&ring, "dz")?;
            let zinv = Poly::gen(&ring, "zinv")?;
            Matrix::try_from_fn(&ring, n, n, |i, j| {
                let e = Poly::gen(&ring, &format!("x{}", i + 1))?.mul(&Poly::gen(&ring, &format!("d{}", j + 1))?)?;
                let mut v = Poly::scalar(&ring, k1[i][j].clone()).sub(&zinv.mul(&e)?)?;
                if i == j {
                    v = v.add(&dz)?;
                }
                Ok(v)
            })
        }
        ExampleKind::GlNLax { n } => {
            let ring = tensor(&laurent_weyl()?, &gl_pbw(*n)?, true)?;
            let dz = Poly::gen(&ring, "dz")?;
            let zinv = Poly::gen(&ring, "zinv")?;
            Matrix::try_from_fn(&ring, *n, *n, |i, j| {
                let mut v = zinv.mul(&Poly::gen(&ring, &format!("e[{},{}]", i + 1, j + 1))?)?.neg();
                if i == j {
                    v = v.add(&dz)?;
                }
                Ok(v)
            })
        }
        ExampleKind::RankOne { n } => {
            let ring = free_on(&format!("r1..r{n}"), (1..=*n).map(|i| format!("r{i}")).collect())?;
            Matrix::try_from_fn(&ring, *n, *n, |_, j| Poly::gen(&ring, &format!("r{}", j + 1)))
        }
        ExampleKind::CartierFoataGeneric { n } => Matrix::generic(&cartier_foata(*n, *n)?, "M", *n, *n),
        ExampleKind::ManinGeneric { n } => Matrix::generic(&manin_generic(*n, *n)?, "M", *n, *n),
        ExampleKind::ManinGenericTranspose { n } => Matrix::generic(&manin_generic_transpose(*n, *n)?, "M", *n, *n),
    }
}
