//! Exact linear algebra for matrices over noncommutative rings.
//!
//! Rings are quotients of free algebras presented by terminating, confluent
//! rewrite systems. Polynomials are kept in normal form, so equality in the
//! ring is equality of coefficient tables. On top of that sit matrices,
//! column determinants, truncated series inverses and a catalogue of
//! identity checkers for Manin matrices.

pub mod config;
pub mod error;
pub mod identities;
pub mod ncmatrix;
pub mod ncpoly;
pub mod rewrite;
pub mod rings;

pub use error::{Error, Result};
pub use ncmatrix::{Alg, Matrix};
pub use ncpoly::{Param, Poly, Series, Q};
pub use rings::Ring;
