//! Square rational matrices as an [`Alg`], used for block determinants.

use super::Alg;
use crate::error::{Error, Result};
use crate::ncpoly::render::render_rational;
use crate::ncpoly::Q;
use num_traits::{One, Zero};
use rand::Rng;

/// An `m×m` matrix of rationals, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct RatMat {
    m: usize,
    data: Vec<Q>,
}

impl RatMat {
    pub fn zero(m: usize) -> Self {
        RatMat {
            m,
            data: vec![Q::zero(); m * m],
        }
    }

    pub fn scalar(m: usize, c: &Q) -> Self {
        let mut out = Self::zero(m);
        for i in 0..m {
            out.data[i * m + i] = c.clone();
        }
        out
    }

    pub fn identity(m: usize) -> Self {
        Self::scalar(m, &Q::one())
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Shape("RatMat needs a square row list".into()));
        }
        Ok(RatMat {
            m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Entries drawn uniformly from `-range..=range`.
    pub fn random<R: Rng>(rng: &mut R, m: usize, range: i64) -> Self {
        RatMat {
            m,
            data: (0..m * m).map(|_| Q::from_integer(rng.gen_range(-range..=range).into())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.m + j]
    }

    pub fn rows(&self) -> Vec<Vec<Q>> {
        self.data.chunks(self.m.max(1)).map(<[Q]>::to_vec).collect()
    }

    /// Exact determinant by fraction-valued Gaussian elimination.
    pub fn det(&self) -> Q {
        rat_det(&self.rows())
    }

    /// Exact inverse, `None` if singular.
    pub fn inverse(&self) -> Option<RatMat> {
        let m = self.m;
        let mut a = self.rows();
        let mut inv = RatMat::identity(m).rows();
        for c in 0..m {
            let p = (c..m).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for j in 0..m {
                a[c][j] = &a[c][j] / &piv;
                inv[c][j] = &inv[c][j] / &piv;
            }
            for r in 0..m {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..m {
                    let (x, y) = (&a[c][j] * &f, &inv[c][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
        RatMat::from_rows(inv).ok()
    }
}

/// Determinant of a square rational matrix given by rows.
pub fn rat_det(rows: &[Vec<Q>]) -> Q {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for j in c..n {
                let x = &a[c][j] * &f;
                a[r][j] -= x;
            }
        }
    }
    det
}

impl Alg for RatMat {
    type Ctx = usize;
    fn ctx(&self) -> usize {
        self.m
    }
    fn zero_in(ctx: &usize) -> Self {
        RatMat::zero(*ctx)
    }
    fn scalar_in(ctx: &usize, c: &Q) -> Self {
        RatMat::scalar(*ctx, c)
    }
    fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        if self.m != o.m {
            return Err(Error::Shape(format!("RatMat {} vs {}", self.m, o.m)));
        }
        Ok(RatMat {
            m: self.m,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        if self.m != o.m {
            return Err(Error::Shape(format!("RatMat {} vs {}", self.m, o.m)));
        }
        let m = self.m;
        let mut out = RatMat::zero(m);
        for i in 0..m {
            for k in 0..m {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    out.data[i * m + j] += a * o.get(k, j);
                }
            }
        }
        Ok(out)
    }
    fn neg(&self) -> Self {
        RatMat {
            m: self.m,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
    fn scale(&self, c: &Q) -> Self {
        RatMat {
            m: self.m,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }
    fn components(&self) -> Vec<(String, String)> {
        if Alg::is_zero(self) {
            return vec![];
        }
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(render_rational).collect::<Vec<_>>().join(", ")))
            .collect();
        vec![(String::new(), format!("[{}]", rows.join(", ")))]
    }
}
