//! Exact noncommutative polynomials and truncated power series.

pub mod render;
mod poly;
mod series;
mod word;

pub use poly::Poly;
pub use series::{Param, Series};
pub use word::{Gen, Mono, Word};

/// Exact rational scalars.
pub type Q = num_rational::BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}
