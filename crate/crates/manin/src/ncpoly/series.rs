use super::poly::Poly;
use super::Q;
use crate::error::{Error, Result};
use crate::rings::Ring;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// The central formal parameter of a series.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Param {
    #[serde(rename = "t")]
    T,
    #[serde(rename = "ε")]
    Eps,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::T => "t",
            Param::Eps => "ε",
        })
    }
}

/// A power series in a central parameter, exact modulo `param^(degree+1)`.
#[derive(Clone, PartialEq, Debug)]
pub struct Series {
    param: Param,
    coeffs: Vec<Poly>,
}

impl Series {
    pub fn zero(ring: &Arc<Ring>, param: Param, degree: usize) -> Self {
        Series {
            param,
            coeffs: vec![Poly::zero(ring); degree + 1],
        }
    }

    /// A polynomial placed in degree zero.
    pub fn constant(p: Poly, param: Param, degree: usize) -> Self {
        Self::monomial(p, 0, param, degree)
    }

    /// `p·param^k`, truncated.
    pub fn monomial(p: Poly, k: usize, param: Param, degree: usize) -> Self {
        let mut s = Self::zero(p.ring(), param, degree);
        if k <= degree {
            s.coeffs[k] = p;
        }
        s
    }

    /// Build from coefficients; missing ones are zero, extra ones dropped.
    pub fn from_coeffs(ring: &Arc<Ring>, param: Param, degree: usize, coeffs: Vec<Poly>) -> Result<Self> {
        let mut s = Self::zero(ring, param, degree);
        for (k, c) in coeffs.into_iter().enumerate().take(degree + 1) {
            if !c.ring().same(ring) {
                return Err(Error::RingMismatch(ring.name().into(), c.ring().name().into()));
            }
            s.coeffs[k] = c;
        }
        Ok(s)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.coeffs[0].ring()
    }

    pub fn param(&self) -> Param {
        self.param
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of `param^k` (zero beyond the truncation degree).
    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.ring()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    fn check(&self, other: &Series) -> Result<()> {
        if self.param != other.param || self.degree() != other.degree() {
            return Err(Error::SeriesMismatch(format!(
                "{} mod {}^{} vs {} mod {}^{}",
                self.param,
                self.param,
                self.degree() + 1,
                other.param,
                other.param,
                other.degree() + 1
            )));
        }
        Ok(())
    }

    fn map<F: Fn(&Poly) -> Poly>(&self, f: F) -> Series {
        Series {
            param: self.param,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(Series {
            param: self.param,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        self.map(Poly::neg)
    }

    pub fn scale(&self, c: &Q) -> Series {
        self.map(|p| p.scale(c))
    }

    /// Cauchy product; factor order is preserved in every coefficient.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        let d = self.degree();
        let mut coeffs = vec![Poly::zero(self.ring()); d + 1];
        for i in 0..=d {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=d - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&other.coeffs[j])?)?;
            }
        }
        Ok(Series {
            param: self.param,
            coeffs,
        })
    }

    pub fn mul_poly_left(&self, p: &Poly) -> Result<Series> {
        let coeffs = self.coeffs.iter().map(|c| p.mul(c)).collect::<Result<_>>()?;
        Ok(Series {
            param: self.param,
            coeffs,
        })
    }

    /// Two-sided inverse. The constant term must be a nonzero rational.
    /// Uses `g_k = −f_0^{-1} Σ_{j≥1} f_j g_{k−j}`.
    pub fn inverse(&self) -> Result<Series> {
        let c0 = self.coeffs[0]
            .as_scalar()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| {
                Error::NotInvertible(format!(
                    "constant term `{}` is not a nonzero scalar",
                    self.coeffs[0]
                ))
            })?;
        let inv0 = c0.recip();
        let ring = self.ring().clone();
        let mut g = vec![Poly::scalar(&ring, inv0.clone())];
        for k in 1..=self.degree() {
            let mut s = Poly::zero(&ring);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s = s.add(&self.coeffs[j].mul(&g[k - j])?)?;
                }
            }
            g.push(s.scale(&-inv0.clone()));
        }
        Ok(Series {
            param: self.param,
            coeffs: g,
        })
    }

    /// Termwise derivative in the parameter; truncation drops by one.
    pub fn derivative(&self) -> Series {
        let d = self.degree();
        if d == 0 {
            return Series::zero(self.ring(), self.param, 0);
        }
        Series {
            param: self.param,
            coeffs: (1..=d)
                .map(|k| self.coeffs[k].scale(&super::q_int(k as i64)))
                .collect(),
        }
    }

    /// Truncate or zero-extend to another degree.
    pub fn with_degree(&self, degree: usize) -> Series {
        let mut coeffs: Vec<Poly> = self.coeffs.iter().take(degree + 1).cloned().collect();
        while coeffs.len() < degree + 1 {
            coeffs.push(Poly::zero(self.ring()));
        }
        Series {
            param: self.param,
            coeffs,
        }
    }

    /// `exp(f) = Σ f^k / k!`; requires a zero constant term.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exp needs a zero constant term".into()));
        }
        let one = Series::constant(Poly::one(self.ring()), self.param, self.degree());
        let mut out = one.clone();
        let mut pw = one;
        let mut fact = Q::one();
        for k in 1..=self.degree() {
            pw = pw.mul(self)?;
            fact *= super::q_int(k as i64);
            out = out.add(&pw.scale(&fact.recip()))?;
        }
        Ok(out)
    }

    /// `log(f) = Σ (−1)^{k+1} (f−1)^k / k`; requires constant term one.
    pub fn log(&self) -> Result<Series> {
        if !self.coeffs[0].as_scalar().is_some_and(|c| c.is_one()) {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let one = Series::constant(Poly::one(self.ring()), self.param, self.degree());
        let g = self.sub(&one)?;
        let mut out = Series::zero(self.ring(), self.param, self.degree());
        let mut pw = one;
        for k in 1..=self.degree() {
            pw = pw.mul(&g)?;
            let c = Q::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, (k as i64).into());
            out = out.add(&pw.scale(&c))?;
        }
        Ok(out)
    }

    /// Nonzero coefficients as `(label, rendering)`, e.g. `("t^2", "a·b")`.
    pub fn components(&self) -> Vec<(String, String)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (format!("{}^{}", self.param, k), c.render()))
            .collect()
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .components()
            .into_iter()
            .map(|(l, c)| format!("[{l}] {c}"))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("; ")
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
