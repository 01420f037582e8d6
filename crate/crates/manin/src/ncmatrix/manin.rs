//! Manin, q-Manin and Fun_q(GL_n) predicates, and the coaction test.
//!
//! Each predicate returns the nonzero residuals with 1-based labels; an
//! empty list means the relations hold.

use super::{Alg, Matrix};
use crate::error::{Error, Result};
use crate::ncpoly::Poly;
use crate::rings::{self, Ring};
use std::sync::Arc;

/// Algebra the coaction acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoactionKind {
    Polynomial,
    Grassmann,
    QPolynomial,
    QGrassmann,
}

fn keep<T: Alg>(out: &mut Vec<(String, T)>, label: String, r: T) {
    if !r.is_zero() {
        out.push((label, r));
    }
}

/// Column commutators `[M_ij, M_kj]` and cross relations
/// `[M_ij, M_kl] − [M_kj, M_il]` for `i<k`, `j<l`.
pub fn is_manin<T: Alg>(m: &Matrix<T>) -> Result<Vec<(String, T)>> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for k in i + 1..m.rows() {
            for j in 0..m.cols() {
                let r = m.get(i, j).commutator(m.get(k, j))?;
                keep(&mut out, format!("col({},{};{})", i + 1, k + 1, j + 1), r);
            }
            for j in 0..m.cols() {
                for l in j + 1..m.cols() {
                    let r = m
                        .get(i, j)
                        .commutator(m.get(k, l))?
                        .sub(&m.get(k, j).commutator(m.get(i, l))?)?;
                    keep(&mut out, format!("cross({},{};{},{})", i + 1, k + 1, j + 1, l + 1), r);
                }
            }
        }
    }
    Ok(out)
}

fn require_q(ring: &Arc<Ring>) -> Result<()> {
    if !ring.sys().has_q() {
        return Err(Error::NoQ(ring.name().to_string()));
    }
    Ok(())
}

/// `ca − q·ac` per column and `ad − da − q^{-1}·cb + q·bc` per 2×2 corner.
pub fn is_q_manin(m: &Matrix<Poly>) -> Result<Vec<(String, Poly)>> {
    let ring = m.ctx();
    require_q(ring)?;
    let q = Poly::q_power(ring, 1)?;
    let qi = Poly::q_power(ring, -1)?;
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for k in i + 1..m.rows() {
            for j in 0..m.cols() {
                let (a, c) = (m.get(i, j), m.get(k, j));
                let r = c.mul(a)?.sub(&q.mul(&a.mul(c)?)?)?;
                keep(&mut out, format!("col({},{};{})", i + 1, k + 1, j + 1), r);
            }
            for j in 0..m.cols() {
                for l in j + 1..m.cols() {
                    let (a, b, c, d) = (m.get(i, j), m.get(i, l), m.get(k, j), m.get(k, l));
                    let r = a
                        .commutator(d)?
                        .sub(&qi.mul(&c.mul(b)?)?)?
                        .add(&q.mul(&b.mul(c)?)?)?;
                    keep(&mut out, format!("cross({},{};{},{})", i + 1, k + 1, j + 1, l + 1), r);
                }
            }
        }
    }
    Ok(out)
}

/// Relations of Fun_q(GL_n): `T` and `T^t` are both q-Manin.
pub fn is_qg_matrix(t: &Matrix<Poly>) -> Result<Vec<(String, Poly)>> {
    if !t.is_square() {
        return Err(Error::Shape("Fun_q(GL_n) needs a square matrix".into()));
    }
    let mut out = is_q_manin(t)?;
    for (l, r) in is_q_manin(&t.transpose())? {
        out.push((format!("t:{l}"), r));
    }
    Ok(out)
}

fn numbered(sym: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{sym}{i}")).collect()
}

/// Apply `M` to the generators of a variable algebra commuting with the
/// entries and test whether the new variables obey the same relations.
/// Polynomial kinds use `x̃ = Mx`, Grassmann kinds `ψ̃ = ψM`.
pub fn coaction_check(m: &Matrix<Poly>, kind: CoactionKind) -> Result<Vec<(String, Poly)>> {
    let (n, k) = (m.rows(), m.cols());
    let vars = match kind {
        CoactionKind::Polynomial => rings::commutative_on(&format!("x1..x{k}"), numbered("x", k))?,
        CoactionKind::QPolynomial => rings::q_poly(k)?,
        CoactionKind::Grassmann => rings::grassmann(n)?,
        CoactionKind::QGrassmann => rings::q_grassmann(n)?,
    };
    if kind == CoactionKind::QPolynomial || kind == CoactionKind::QGrassmann {
        require_q(m.ctx())?;
    }
    let ring = rings::tensor(m.ctx(), &vars, true)?;
    let me = m.embed(&ring)?;
    let var = |s: &str, i: usize| Poly::gen(&ring, &format!("{s}{}", i + 1));
    let mut out = Vec::new();
    match kind {
        CoactionKind::Polynomial | CoactionKind::QPolynomial => {
            let mut xt = Vec::with_capacity(n);
            for i in 0..n {
                let mut s = Poly::zero(&ring);
                for j in 0..k {
                    s = s.add(&me.get(i, j).mul(&var("x", j)?)?)?;
                }
                xt.push(s);
            }
            let q = Poly::q_power(&ring, 1).ok();
            for i in 0..n {
                for j in i + 1..n {
                    let r = match (&q, kind) {
                        (Some(q), CoactionKind::QPolynomial) => xt[j].mul(&xt[i])?.sub(&q.mul(&xt[i].mul(&xt[j])?)?)?,
                        _ => xt[i].commutator(&xt[j])?,
                    };
                    keep(&mut out, format!("x~({},{})", i + 1, j + 1), r);
                }
            }
        }
        CoactionKind::Grassmann | CoactionKind::QGrassmann => {
            let mut pt = Vec::with_capacity(k);
            for j in 0..k {
                let mut s = Poly::zero(&ring);
                for i in 0..n {
                    s = s.add(&var("psi", i)?.mul(me.get(i, j))?)?;
                }
                pt.push(s);
            }
            let q = Poly::q_power(&ring, 1).ok();
            for i in 0..k {
                keep(&mut out, format!("psi~({})^2", i + 1), pt[i].mul(&pt[i])?);
                for j in i + 1..k {
                    let r = match (&q, kind) {
                        (Some(q), CoactionKind::QGrassmann) => pt[i].mul(&pt[j])?.add(&q.mul(&pt[j].mul(&pt[i])?)?)?,
                        _ => pt[i].anticommutator(&pt[j])?,
                    };
                    keep(&mut out, format!("psi~({},{})", i + 1, j + 1), r);
                }
            }
        }
    }
    Ok(out)
}
