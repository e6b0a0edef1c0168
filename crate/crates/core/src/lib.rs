//! Exact calculus of cyclotomic products
//! `ζ_e(q) = ∏_{d|n} (q^d − 1)^{e(d)}`.
//!
//! The crate is `no_std` (it needs `alloc`). All arithmetic is exact: integers
//! and [`Rational`] values, univariate polynomials, rational functions and
//! truncated power series over ℚ, and truncated Dirichlet series.
//!
//! Module map:
//!
//! - [`arith`]: divisor lattices, Möbius/Euler/Ramanujan functions, the
//!   [`DivisorMap`] container and the named arithmetic functions.
//! - [`exactpoly`]: polynomials, rational functions, power series,
//!   cyclotomic and necklace polynomials, resultants and tensor products.
//! - [`zetaprod`]: [`ZetaProduct`], even functions, multiplicities and power
//!   sums, the Saito transform, Fourier–Ramanujan analysis and the identity
//!   checkers built on them.
//! - [`dirichlet`]: truncated Dirichlet series, the `G`-generalised
//!   transforms and the convolution identities.
//! - [`apostol`]: Apostol–Bernoulli and Apostol–Euler polynomials and the
//!   weighted sums over even functions.
//! - [`etaprod`]: logarithmic derivative of the eta-product `∏_k ζ_e(q^k)`.
//! - [`weights`]: quasihomogeneous weight systems and Seifert invariants.
//! - [`catalog`]: built-in generating-function tables for simple, parabolic
//!   and exceptional unimodal singularities.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod apostol;
pub mod arith;
pub mod catalog;
pub mod dirichlet;
mod error;
pub mod etaprod;
pub mod exactpoly;
pub mod report;
pub mod weights;
pub mod zetaprod;

pub use arith::{ArithmeticFunction, DivisorMap};
pub use error::{Error, Result};
pub use exactpoly::{PolynomialQ, PowerSeriesQ, RationalFunctionQ};
pub use report::{Check, Flag, IdentityReport, Reading, Status};
pub use zetaprod::{EvenFunction, ZetaProduct};

/// Exact rational number used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// `num / den` as a reduced [`Rational`]. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
