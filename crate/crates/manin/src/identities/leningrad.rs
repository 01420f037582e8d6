//! Tensor-notation forms of the Manin relations.

use super::basic::parse_variant;
use super::registry::{CheckCtx, Family};
use super::{Expect, Outcome, Residuals};
use crate::error::{Error, Result};
use crate::ncmatrix::{
    antisymmetrizer, kron_left, kron_right, one_minus_t, swap_p, symmetrizer, tensor_power_factor, Matrix,
    MAX_TENSOR_POWER,
};
use crate::ncpoly::{Param, Q};

fn half() -> Q {
    Q::new(1.into(), 2.into())
}

pub(super) fn leningrad(ctx: &CheckCtx) -> Result<Outcome> {
    let n = ctx.n;
    let family = ctx.family(Family::Manin)?;
    let ring = family.ring(n, n)?;
    let m = Matrix::generic(&ring, "M", n, n)?;
    let (m1, m2) = (kron_left(&m)?, kron_right(&m)?);
    let p = swap_p(&ring, n);
    let id = Matrix::identity(&ring, n * n);
    let x = m1.mul(&m2)?;
    let y = m2.mul(&m1)?;
    let c = x.sub(&y)?;
    let a = id.sub(&p)?.scale(&half());
    let s = id.add(&p)?.scale(&half());
    let mut res = Residuals::new();
    res.push_matrix("(1) C − P·C", &c.sub(&p.mul(&c)?)?);
    res.push_matrix("(2) A·X·A − A·X", &a.mul(&x)?.mul(&a)?.sub(&a.mul(&x)?)?);
    res.push_matrix("(3) S·Y·S − X·S", &s.mul(&y)?.mul(&s)?.sub(&x.mul(&s)?)?);
    res.push_matrix("(4) (1−P)·Y·(1+P)", &id.sub(&p)?.mul(&y)?.mul(&id.add(&p)?)?);
    res.push_matrix("C²", &c.mul(&c)?);
    let expect = if family.is_manin() { Expect::Zero } else { Expect::Nonzero };
    let mut out = Outcome::new(&ring, expect).param("n", n);
    out.residuals = res;
    Ok(out)
}

pub(super) fn silantiev(ctx: &CheckCtx) -> Result<Outcome> {
    let n = ctx.n;
    let k = parse_variant(ctx, "m", 2)?;
    if !(1..=MAX_TENSOR_POWER).contains(&k) {
        return Err(Error::Precondition(format!("tensor power m = {k} must be between 1 and {MAX_TENSOR_POWER}")));
    }
    let family = ctx.family(Family::Manin)?;
    let ring = family.ring(n, n)?;
    let m = Matrix::generic(&ring, "M", n, n)?;
    let mut x = Matrix::identity(&ring, n.pow(k as u32));
    for pos in 0..k {
        x = x.mul(&tensor_power_factor(&m, k, pos)?)?;
    }
    let fact: i64 = (1..=k as i64).product();
    let inv_fact = Q::new(1.into(), fact.into());
    let a = antisymmetrizer(&ring, n, k)?;
    let s = symmetrizer(&ring, n, k)?;
    let ax = a.mul(&x)?;
    let xs = x.mul(&s)?;
    let mut res = Residuals::new();
    res.push_matrix("A·X − A·X·A/m!", &ax.sub(&ax.mul(&a)?.scale(&inv_fact))?);
    res.push_matrix("X·S − S·X·S/m!", &xs.sub(&s.mul(&xs)?.scale(&inv_fact))?);
    let expect = if family.is_manin() { Expect::Zero } else { Expect::Nonzero };
    let mut out = Outcome::new(&ring, expect).param("n", n).param("m", k);
    out.residuals = res;
    Ok(out)
}

pub(super) fn curious_corollary(ctx: &CheckCtx) -> Result<Outcome> {
    let (n, d) = (ctx.n, ctx.degree()?);
    let family = ctx.family(Family::Manin)?;
    let ring = family.ring(n, n)?;
    let m = one_minus_t(&Matrix::generic(&ring, "M", n, n)?, Param::T, d);
    let inv = m.inverse()?;
    let (m1, m2) = (kron_left(&m)?, kron_right(&m)?);
    let (i1, i2) = (kron_left(&inv)?, kron_right(&inv)?);
    let p = swap_p(m.ctx(), n);
    let c = m1.commutator(&m2)?;
    let ci = i1.commutator(&i2)?;
    let mut res = Residuals::new();
    res.push_matrix("P·[M1⁻¹,M2⁻¹]·[M1,M2]", &p.mul(&ci)?.mul(&c)?);
    res.push_matrix("P·[M1,M2]·M1⁻¹·M2⁻¹·[M1,M2]", &p.mul(&c)?.mul(&i1)?.mul(&i2)?.mul(&c)?);
    let expect = if family.is_manin() { Expect::Zero } else { Expect::Nonzero };
    let mut out = Outcome::new(&ring, expect).param("n", n).param("degree", d);
    out.residuals = res;
    Ok(out)
}
