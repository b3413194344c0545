//! Dense univariate polynomials over the rationals.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rat, Rational};
use crate::error::{Error, Result};

/// A polynomial in `t` with exact rational coefficients, stored densely by
/// exponent. The coefficient vector never has trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPolynomial {
    coeffs: Vec<Rational>,
}

impl UniPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, exp: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        Self { coeffs }
    }

    /// `t^exp`
    pub fn t_pow(exp: usize) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// `1 - t^exp`; the zero polynomial when `exp == 0`.
    pub fn one_minus_t_pow(exp: usize) -> Self {
        if exp == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[0] = Rational::one();
        coeffs[exp] = -Rational::one();
        Self { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_i128s(coeffs: &[i128]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> Rational {
        self.coeffs.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Drop every term of degree above `max_deg`.
    pub fn truncate(&self, max_deg: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(max_deg + 1).cloned().collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// `t^deg * p(1/t)`; `deg` must be at least the degree of `self`.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            assert!(i <= deg, "reversal degree below polynomial degree");
            coeffs[deg - i] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Quotient of an exact division; errors when a remainder is left.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Largest `m` with `factor^m | self`, together with `self / factor^m`.
    /// `factor` must have positive degree and `self` must be nonzero.
    pub fn strip_factor(&self, factor: &Self) -> (u32, Self) {
        debug_assert!(factor.degree().unwrap_or(0) > 0 && !self.is_zero());
        let mut count = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(factor).expect("nonzero factor");
            if !r.is_zero() {
                return (count, cur);
            }
            cur = q;
            count += 1;
        }
    }

    /// Monic greatest common divisor.
    ///
    /// Runs a primitive pseudo-remainder sequence over the integers, which
    /// keeps coefficient growth in check for the high-degree cyclotomic
    /// products that show up in Hilbert series.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        if self.is_zero() {
            return Ok(other.monic());
        }
        if other.is_zero() {
            return Ok(self.monic());
        }
        let (mut a, mut b) = (primitive_int(self), primitive_int(other));
        if a.len() < b.len() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        let g = Self::from_coeffs(a.into_iter().map(Rational::from_integer).collect());
        Ok(g.monic())
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let g = self.gcd(other)?;
        Ok((self * &other.exact_div(&g)?).monic())
    }

    /// Extended Euclid: returns `(g, alpha, beta)` with `alpha*self + beta*other = g`,
    /// `g` monic, and cofactors of minimal degree
    /// (`deg alpha < deg other - deg g`, `deg beta < deg self - deg g`).
    pub fn xgcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        let inv = r0.leading_coeff().expect("nonzero gcd").recip();
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Inverse of `self` modulo `modulus`, if it exists.
    pub fn inverse_mod(&self, modulus: &Self) -> Result<Option<Self>> {
        let (g, a, _) = self.rem(modulus)?.xgcd(modulus)?;
        if g.is_one() {
            Ok(Some(a.rem(modulus)?))
        } else {
            Ok(None)
        }
    }
}

fn lcm_of_denominators(p: &UniPolynomial) -> BigInt {
    p.coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut v = v;
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

fn primitive_int(p: &UniPolynomial) -> Vec<BigInt> {
    let l = lcm_of_denominators(p);
    primitive(
        p.coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect(),
    )
}

/// Pseudo-remainder of integer polynomials (`b` nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let off = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[off + j] -= &lr * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        // keep the sequence small
        r = primitive(r);
    }
    r
}

impl<'a> Add<&'a UniPolynomial> for &'a UniPolynomial {
    type Output = UniPolynomial;
    fn add(self, rhs: &UniPolynomial) -> UniPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        UniPolynomial::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a UniPolynomial> for &'a UniPolynomial {
    type Output = UniPolynomial;
    fn sub(self, rhs: &UniPolynomial) -> UniPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Rational::zero());
        for (c, d) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= d;
        }
        UniPolynomial::from_coeffs(coeffs)
    }
}

impl<'a> Mul<&'a UniPolynomial> for &'a UniPolynomial {
    type Output = UniPolynomial;
    fn mul(self, rhs: &UniPolynomial) -> UniPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UniPolynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        UniPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for &UniPolynomial {
    type Output = UniPolynomial;
    fn neg(self) -> UniPolynomial {
        UniPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<UniPolynomial> for UniPolynomial {
            type Output = UniPolynomial;
            fn $m(self, rhs: UniPolynomial) -> UniPolynomial { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a UniPolynomial> for UniPolynomial {
            type Output = UniPolynomial;
            fn $m(self, rhs: &UniPolynomial) -> UniPolynomial { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for UniPolynomial {
    type Output = UniPolynomial;
    fn neg(self) -> UniPolynomial {
        -&self
    }
}

impl fmt::Display for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = abs.is_one();
            if exp == 0 || !unit {
                write!(f, "{}", abs)?;
            }
            if exp > 0 {
                if !unit {
                    f.write_str("*")?;
                }
                f.write_str("t")?;
                if exp > 1 {
                    write!(f, "^{}", exp)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPolynomial({})", self)
    }
}

/// Parses sums of terms such as `1 - 3t^4 + 2/3*t^5 - t`.
impl FromStr for UniPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty input".to_string()));
        }
        let bytes = cleaned.as_bytes();
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut neg = false;
        let mut i = 0;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            neg = bytes[0] == b'-';
            start = 1;
            i = 1;
        }
        while i < bytes.len() {
            let b = bytes[i];
            // a sign that is not part of an exponent starts a new term
            if (b == b'+' || b == b'-') && i > start && bytes[i - 1] != b'^' {
                terms.push((neg, &cleaned[start..i]));
                neg = b == b'-';
                start = i + 1;
            }
            i += 1;
        }
        terms.push((neg, &cleaned[start..]));

        let mut acc = UniPolynomial::zero();
        for (neg, term) in terms {
            let (c, e) = parse_term(term)?;
            let c = if neg { -c } else { c };
            acc = &acc + &UniPolynomial::monomial(c, e);
        }
        Ok(acc)
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(alloc::format!("bad coefficient `{}`", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(term: &str) -> Result<(Rational, usize)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".to_string()));
    }
    let Some(tpos) = term.find('t') else {
        return Ok((parse_rational(term)?, 0));
    };
    let coeff_part = term[..tpos].trim_end_matches('*');
    let coeff = if coeff_part.is_empty() {
        Rational::one()
    } else {
        parse_rational(coeff_part)?
    };
    let rest = &term[tpos + 1..];
    let exp = if rest.is_empty() {
        1
    } else if let Some(e) = rest.strip_prefix('^') {
        e.parse::<usize>()
            .map_err(|_| Error::Parse(alloc::format!("bad exponent in `{}`", term)))?
    } else {
        return Err(Error::Parse(alloc::format!("unexpected `{}`", rest)));
    };
    Ok((coeff, exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> UniPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let h = p("1 - 3t^4 - 6*t^5 + 1/2t^7 - t");
        assert_eq!(h.to_string(), "1 - t - 3*t^4 - 6*t^5 + 1/2*t^7");
        assert_eq!(p(&h.to_string()), h);
        assert_eq!(p("-t^3"), UniPolynomial::monomial(rat(-1), 3));
        assert_eq!(p("0"), UniPolynomial::zero());
        assert!("1 + x".parse::<UniPolynomial>().is_err());
    }

    #[test]
    fn xgcd_coprime_pair() {
        let a = p("1 + t");
        let b = p("t^2");
        let (g, al, be) = a.xgcd(&b).unwrap();
        assert!(g.is_one());
        assert_eq!(&(&al * &a) + &(&be * &b), g);
    }

    #[test]
    fn xgcd_cyclotomic_against_linear() {
        // hand Euclid: 1+t+t^2 = (1-t)(-t-2) + 3, so the gcd is 1
        let a = p("1 + t + t^2");
        let b = p("1 - t");
        let (g, al, be) = a.xgcd(&b).unwrap();
        assert!(g.is_one());
        assert_eq!(al, UniPolynomial::constant(Rational::new(1.into(), 3.into())));
        assert_eq!(&(&al * &a) + &(&be * &b), g);
        assert!(be.degree().unwrap() < 2);
    }

    #[test]
    fn xgcd_common_factor_is_monic() {
        let (g, al, be) = p("1 - t^2").xgcd(&p("1 - t")).unwrap();
        assert_eq!(g, p("-1 + t"));
        assert_eq!(&(&al * &p("1 - t^2")) + &(&be * &p("1 - t")), g);
        assert!(al.is_zero() || al.degree() == Some(0));
    }

    #[test]
    fn xgcd_of_zeros_is_an_error() {
        assert_eq!(
            UniPolynomial::zero().xgcd(&UniPolynomial::zero()),
            Err(Error::UndefinedGcd)
        );
        assert_eq!(
            UniPolynomial::zero().gcd(&UniPolynomial::zero()),
            Err(Error::UndefinedGcd)
        );
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        let a = &UniPolynomial::one_minus_t_pow(12) * &UniPolynomial::one_minus_t_pow(8);
        let b = &UniPolynomial::one_minus_t_pow(18) * &UniPolynomial::one_minus_t_pow(4);
        let g = a.gcd(&b).unwrap();
        // (1-t^12, 1-t^18) share 1-t^6; (1-t^8, 1-t^4) share 1-t^4; cross terms add more
        assert!(a.rem(&g).unwrap().is_zero());
        assert!(b.rem(&g).unwrap().is_zero());
        let ca = a.exact_div(&g).unwrap();
        let cb = b.exact_div(&g).unwrap();
        assert!(ca.gcd(&cb).unwrap().is_one());
    }

    #[test]
    fn strip_factor_counts_multiplicity() {
        let f = p("1 - t").pow(3) * p("1 + t");
        let (m, rest) = f.strip_factor(&p("t - 1"));
        assert_eq!(m, 3);
        assert_eq!(rest.degree(), Some(1));
    }

    #[test]
    fn inverse_mod_cyclotomic() {
        let phi5 = p("1 + t + t^2 + t^3 + t^4");
        let a = p("1 + t^2");
        let inv = a.inverse_mod(&phi5).unwrap().unwrap();
        assert!((&(&a * &inv) - &UniPolynomial::one()).rem(&phi5).unwrap().is_zero());
        assert_eq!(p("1 - t").inverse_mod(&p("1 - t^2")).unwrap(), None);
    }
}
