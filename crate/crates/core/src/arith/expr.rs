//! Parser for rational-function expressions in `t`, e.g.
//! `(1 - t^7) / ((1 - t)^4 (1 - t^2))`.
//!
//! Grammar: sums and differences of products and quotients of powers.
//! Juxtaposition multiplies (`3t^2`, `(1-t)(1+t)`); exponents are integers and
//! may be negative.

use alloc::format;
use alloc::string::ToString;
use core::str::FromStr;

use num_bigint::BigInt;

use super::{Rational, RationalFunction, UniPolynomial};
use crate::error::{Error, Result};

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{} at byte {}", what, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.checked_div(&self.unary()?)?;
                }
                Some(b'(' | b't' | b'0'..=b'9') => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = self.integer()?;
        let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
        let mut out = RationalFunction::one();
        for _ in 0..e {
            out = &out * &base;
        }
        if neg {
            out = RationalFunction::one().checked_div(&out)?;
        }
        Ok(out)
    }

    fn primary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(RationalFunction::from_poly(UniPolynomial::t_pow(1)))
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = core::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
                let n: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(RationalFunction::from_poly(UniPolynomial::constant(Rational::from_integer(n))))
            }
            _ => Err(self.error("expected a number, `t` or `(`")),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer exponent"));
        }
        core::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|e: core::num::ParseIntError| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> UniPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn products_and_quotients() {
        let f: RationalFunction = "(1 - t^7) / ((1 - t)^4 (1 - t^2))".parse().unwrap();
        let g = RationalFunction::new(
            poly("1 - t^7"),
            &poly("1 - 4t + 6t^2 - 4t^3 + t^4") * &poly("1 - t^2"),
        )
        .unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn display_round_trips() {
        let f: RationalFunction = "-t^3/((1-t)^3*(1-t^2)) + 2/3".parse().unwrap();
        assert_eq!(f.to_string().parse::<RationalFunction>().unwrap(), f);
    }

    #[test]
    fn negative_exponent_and_errors() {
        let f: RationalFunction = "t^-2 * t^3".parse().unwrap();
        assert_eq!(f, RationalFunction::from_poly(poly("t")));
        assert!("(1 - t".parse::<RationalFunction>().is_err());
        assert!("1/(1-1)".parse::<RationalFunction>().is_err());
        assert!("x".parse::<RationalFunction>().is_err());
    }
}
