use alloc::string::ToString;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{series_of, Rational, TruncatedSeries, UniPolynomial};
use crate::error::{Error, Result};

/// A quotient of polynomials kept in canonical form: numerator and
/// denominator coprime, denominator monic. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UniPolynomial,
    den: UniPolynomial,
}

impl RationalFunction {
    pub fn new(num: UniPolynomial, den: UniPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den)?;
        if g.is_one() {
            return Ok(Self::from_coprime(num, den));
        }
        Ok(Self::from_coprime(num.exact_div(&g)?, den.exact_div(&g)?))
    }

    /// Build from a pair already known to be coprime; only the monic
    /// normalisation of the denominator is applied.
    pub(crate) fn from_coprime(num: UniPolynomial, den: UniPolynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading_coeff().expect("nonzero denominator");
        if lc.is_one() {
            return Self { num, den };
        }
        let inv = lc.recip();
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: UniPolynomial) -> Self {
        Self {
            num: p,
            den: UniPolynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniPolynomial::one())
    }

    pub fn numerator(&self) -> &UniPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &UniPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = Self::new(rhs.den.clone(), rhs.num.clone())?;
        Ok(self * &inv)
    }

    pub fn series(&self, max_deg: usize) -> Result<TruncatedSeries> {
        series_of(self, max_deg)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        evaluate_at(self, x)
    }
}

/// Exact value of `f(x)`; fails when `x` is a root of the canonical denominator.
pub fn evaluate_at(f: &RationalFunction, x: &Rational) -> Result<Rational> {
    let d = f.den.eval(x);
    if d.is_zero() {
        return Err(Error::PoleAtPoint(x.to_string()));
    }
    Ok(f.num.eval(x) / d)
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return RationalFunction::new(num, self.den.clone()).expect("nonzero denominator");
        }
        // With both inputs reduced, only factors of g = gcd(b, d) can cancel.
        let g = self.den.gcd(&rhs.den).expect("nonzero denominators");
        let b_red = self.den.exact_div(&g).expect("gcd divides");
        let d_red = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d_red) + &(&rhs.num * &b_red);
        let den = &self.den * &d_red;
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let h = num.gcd(&g).expect("nonzero");
        if h.is_one() {
            RationalFunction::from_coprime(num, den)
        } else {
            RationalFunction::from_coprime(
                num.exact_div(&h).expect("gcd divides"),
                den.exact_div(&h).expect("gcd divides"),
            )
        }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let g1 = self.num.gcd(&rhs.den).expect("nonzero");
        let g2 = rhs.num.gcd(&self.den).expect("nonzero");
        let num = &self.num.exact_div(&g1).expect("divides") * &rhs.num.exact_div(&g2).expect("divides");
        let den = &self.den.exact_div(&g2).expect("divides") * &rhs.den.exact_div(&g1).expect("divides");
        RationalFunction::from_coprime(num, den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num.scale(&self.den.coeff(0).recip()));
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn p(s: &str) -> UniPolynomial {
        s.parse().unwrap()
    }

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn canonical_form_cancels_common_factors() {
        let a = rf("1 - t^7", "1 - t^2");
        let c = p("1 + 3t - t^5");
        let b = RationalFunction::new(&p("1 - t^7") * &c, &p("1 - t^2") * &c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.denominator(), &p("1 + t"));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(p("1"), UniPolynomial::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(rf("1 - t^7", "1 - t^2").eval(&rat(1)).unwrap(), ratio(7, 2));
        assert_eq!(rf("1", "1 - t").eval(&rat(2)).unwrap(), rat(-1));
        assert_eq!(rf("1 - t^5", "1 - t").eval(&rat(1)).unwrap(), rat(5));
        assert!(matches!(
            rf("1", "1 - t").eval(&rat(1)),
            Err(Error::PoleAtPoint(_))
        ));
    }

    #[test]
    fn field_operations() {
        let x = rf("1", "1 - t");
        let y = rf("t", "1 - t^2");
        let s = &x + &y;
        assert_eq!(s, rf("1 + 2t", "1 - t^2"));
        assert_eq!(&s - &y, x);
        assert_eq!((&x * &y).checked_div(&y).unwrap(), x);
        assert!((&x - &x).is_zero());
    }
}
