//! Exact computation and machine verification of the integer sequence
//!
//! ```text
//! a(0) = 0,    a(n) = (n/2) * a(n-1) + (n-1)!    (n >= 1)
//! ```
//!
//! The iterates are dyadic rationals by construction, yet every `a(n)` is an
//! integer. That fact, and everything surrounding it, is checked here by
//! computing the sequence along five independent routes and cross-verifying
//! them exactly:
//!
//! * the defining recurrence, carried in canonical dyadic rationals so that
//!   integrality is a structural property of each iterate ([`engine::a_recurrence`]);
//! * the closed form `a(n) = (n!/2^n) * sum_{k=1..n} 2^k/k` ([`engine::a_closed_form`]);
//! * the Genocchi/Stirling expansion `a(n) = (-1)^(n-1) * sum_k G_k s(n,k)`
//!   ([`engine::Tables::a_genocchi_stirling`]);
//! * a reduced form of that expansion using only even-index Genocchi numbers
//!   ([`engine::Tables::a_reduced`]);
//! * coefficient extraction from the exponential generating function
//!   `-2 log(1-x) / (2-x)` ([`engine::a_egf`]).
//!
//! All arithmetic is exact: arbitrary-precision integers, canonical
//! rationals, canonical dyadic rationals, and truncated formal power series
//! over exact rationals. There is no floating point anywhere in this crate.
//!
//! The supporting machinery is usable on its own: p-adic valuations and the
//! Legendre factorial-valuation formula ([`exact`]), Stirling numbers of both
//! kinds, Genocchi numbers by two independent algorithms, and the Stirling
//! inversion transform ([`combinatorics`]), plus a small truncated power
//! series ring ([`series`]). [`verify::cross_verify`] runs the whole identity
//! suite and returns a structured pass/fail report.
//!
//! Core algorithms are generic over the scalar type through the [`IntScalar`]
//! and [`FieldScalar`] traits. The concrete aliases below ([`Int`], [`Rat`],
//! [`Dyadic`], [`Series`]) fix the arbitrary-precision instantiation used by
//! the sequence engine and the CLI; machine-word scalars such as `i64` and
//! `Ratio<i64>` satisfy the same bounds and are handy in small test oracles.

use std::fmt;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub mod combinatorics;
pub mod engine;
pub mod error;
pub mod exact;
pub mod series;
pub mod verify;

pub use error::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Exact signed integer scalar.
///
/// Satisfied by `num_bigint::BigInt` (the [`Int`] alias used in production)
/// and by the primitive signed integers, which are useful as fast scalars in
/// brute-force test oracles where magnitudes are known to be small.
pub trait IntScalar:
    num_integer::Integer + Signed + FromPrimitive + ToPrimitive + Clone + fmt::Debug + fmt::Display
{
}

impl<T> IntScalar for T where
    T: num_integer::Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Clone
        + fmt::Debug
        + fmt::Display
{
}

/// Exact field scalar for power-series coefficients.
///
/// Satisfied by `num_rational::Ratio<T>` for any [`IntScalar`] `T`; the
/// production instantiation is [`Rat`].
pub trait FieldScalar:
    Num + Signed + FromPrimitive + PartialOrd + Clone + fmt::Debug + fmt::Display
{
}

impl<T> FieldScalar for T where
    T: Num + Signed + FromPrimitive + PartialOrd + Clone + fmt::Debug + fmt::Display
{
}

/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;

/// Canonical arbitrary-precision rational: reduced, denominator positive.
pub type Rat = Ratio<Int>;

/// Canonical arbitrary-precision dyadic rational.
pub type Dyadic = exact::DyadicRational<Int>;

/// Truncated power series over arbitrary-precision rationals.
pub type Series = series::TruncatedSeries<Rat>;

/// Shorthand for `Int::from(v)`.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for the exact rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}
