use crate::error::{Error, Result};
use crate::ncpoly::{Gen, Mono, Poly, Series, Word};
use num_traits::Zero;

/// Canonical pairs `(x_i, p_i)` with `{p_i, x_j} = δ_ij`, all other
/// generator brackets zero.
#[derive(Clone, Debug)]
pub struct PoissonTable {
    x: Vec<Gen>,
    p: Vec<Gen>,
}

impl PoissonTable {
    pub fn symplectic(x: Vec<Gen>, p: Vec<Gen>) -> Self {
        PoissonTable { x, p }
    }

    pub(crate) fn shifted(&self, by: Gen) -> Self {
        PoissonTable {
            x: self.x.iter().map(|g| g + by).collect(),
            p: self.p.iter().map(|g| g + by).collect(),
        }
    }
}

/// Derivative of a commutative polynomial with respect to a generator.
fn partial(f: &Poly, v: Gen) -> Result<Poly> {
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let w = m.word.as_slice();
        for (pos, &g) in w.iter().enumerate() {
            if g == v {
                let mut rest = w.to_vec();
                rest.remove(pos);
                terms.push((Mono::new(Word::from_slice(&rest), m.q), c.clone()));
            }
        }
    }
    Poly::from_terms(f.ring(), terms)
}

/// `{f, g} = Σ_i ∂f/∂p_i·∂g/∂x_i − ∂f/∂x_i·∂g/∂p_i`.
pub fn poisson_bracket(f: &Poly, g: &Poly) -> Result<Poly> {
    let ring = f.ring();
    let table = ring
        .poisson()
        .ok_or_else(|| Error::NotPoisson(ring.name().to_string()))?;
    if !g.ring().same(ring) {
        return Err(Error::RingMismatch(ring.name().into(), g.ring().name().into()));
    }
    let mut out = Poly::zero(ring);
    for (&x, &p) in table.x.iter().zip(&table.p) {
        let a = partial(f, p)?.mul(&partial(g, x)?)?;
        let b = partial(f, x)?.mul(&partial(g, p)?)?;
        out = out.add(&a)?.sub(&b)?;
    }
    Ok(out)
}

/// Coefficientwise bracket of two series in a central parameter.
pub fn poisson_bracket_series(f: &Series, g: &Series) -> Result<Series> {
    if f.param() != g.param() || f.degree() != g.degree() {
        return Err(Error::SeriesMismatch("bracket of mismatched series".into()));
    }
    let d = f.degree();
    let mut coeffs = vec![Poly::zero(f.ring()); d + 1];
    for i in 0..=d {
        for j in 0..=d - i {
            let (a, b) = (f.coeff(i), g.coeff(j));
            if a.is_zero() || b.is_zero() {
                continue;
            }
            coeffs[i + j] = coeffs[i + j].add(&poisson_bracket(&a, &b)?)?;
        }
    }
    let out = Series::from_coeffs(f.ring(), f.param(), d, coeffs)?;
    debug_assert!(out.coeffs().iter().all(|c| !c.terms().values().any(Zero::is_zero)));
    Ok(out)
}
