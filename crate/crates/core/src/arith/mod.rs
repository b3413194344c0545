//! Exact arithmetic substrate: polynomials, rational functions, truncated
//! power series, cyclotomic bookkeeping and dense linear algebra over the
//! rationals. Nothing here ever rounds.

mod cyclotomic;
mod expr;
mod linalg;
mod poly;
mod ratfunc;
mod series;

pub use cyclotomic::{cyclotomic, euler_phi, hilbert_fraction, CyclotomicCache};
pub use linalg::{solve_exact, Solution};
pub use poly::UniPolynomial;
pub use ratfunc::{evaluate_at, RationalFunction};
pub use series::{series_of, TruncatedSeries};

use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms; panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
