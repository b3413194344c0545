use alloc::vec::Vec;

use num_traits::Zero;

use super::{Rational, RationalFunction, UniPolynomial};
use crate::error::{Error, Result};

/// Power-series coefficients for exponents `0..=precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> Option<&Rational> {
        self.coeffs.get(exp)
    }

    /// Keep exponents `0..=precision`.
    pub fn truncated(&self, precision: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=precision.min(self.precision())].to_vec(),
        }
    }

    pub fn to_polynomial(&self) -> UniPolynomial {
        UniPolynomial::from_coeffs(self.coeffs.clone())
    }
}

/// Expand `f` at `t = 0` through degree `max_deg` by long division.
pub fn series_of(f: &RationalFunction, max_deg: usize) -> Result<TruncatedSeries> {
    let den = f.denominator().coeffs();
    let d0 = den.first().filter(|c| !c.is_zero()).ok_or(Error::PoleAtZero)?;
    let d0_inv = d0.recip();
    let num = f.numerator();
    let mut out: Vec<Rational> = Vec::with_capacity(max_deg + 1);
    for i in 0..=max_deg {
        let mut acc = num.coeff(i);
        for (j, dj) in den.iter().enumerate().skip(1).take(i) {
            if !dj.is_zero() {
                acc -= dj * &out[i - j];
            }
        }
        out.push(acc * &d0_inv);
    }
    Ok(TruncatedSeries { coeffs: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(n.parse().unwrap(), d.parse().unwrap()).unwrap()
    }

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn geometric_series() {
        assert_eq!(ints(&series_of(&rf("1", "1 - t"), 3).unwrap()), [1, 1, 1, 1]);
    }

    #[test]
    fn zero_function() {
        assert_eq!(ints(&series_of(&rf("0", "1 - t"), 5).unwrap()), [0; 6]);
    }

    #[test]
    fn pole_at_zero_rejected() {
        assert_eq!(series_of(&rf("1", "t - t^2"), 2), Err(Error::PoleAtZero));
    }

    /// Monomials of degree m in variables of weights 1,1,1,1,2, counted by brute force.
    fn monomial_count(m: usize) -> i64 {
        let mut count = 0;
        for e4 in 0..=m / 2 {
            let rest = m - 2 * e4;
            // compositions of `rest` into 4 nonnegative parts
            count += ((rest + 1) * (rest + 2) * (rest + 3) / 6) as i64;
        }
        count
    }

    #[test]
    fn hypersurface_series_matches_monomial_count() {
        let f: UniPolynomial = "1 - t^7".parse().unwrap();
        let den = &UniPolynomial::one_minus_t_pow(1).pow(4) * &UniPolynomial::one_minus_t_pow(2);
        let s = series_of(&RationalFunction::new(f, den).unwrap(), 9).unwrap();
        assert_eq!(ints(&s)[..3], [1, 4, 11]);
        for m in 0..=9 {
            let relation = if m >= 7 { monomial_count(m - 7) } else { 0 };
            assert_eq!(s.coeff(m).unwrap(), &rat(monomial_count(m) - relation));
        }
    }
}
