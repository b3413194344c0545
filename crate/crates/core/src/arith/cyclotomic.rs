use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{rat, Rational, RationalFunction, UniPolynomial};
use crate::error::{Error, Result};

/// Integer coefficients of the `d`-th cyclotomic polynomial, low degree first.
fn cyclotomic_i128(d: usize, memo: &mut BTreeMap<usize, Vec<i128>>) -> Vec<i128> {
    if let Some(c) = memo.get(&d) {
        return c.clone();
    }
    // t^d - 1
    let mut num = vec![0i128; d + 1];
    num[0] = -1;
    num[d] = 1;
    for e in (1..d).filter(|e| d % e == 0) {
        let phi = cyclotomic_i128(e, memo);
        num = div_monic_i128(&num, &phi);
    }
    memo.insert(d, num.clone());
    num
}

/// Exact quotient by a monic integer polynomial.
fn div_monic_i128(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i128; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// The `d`-th cyclotomic polynomial. Panics if `d == 0`.
pub fn cyclotomic(d: usize) -> UniPolynomial {
    assert!(d > 0, "cyclotomic index must be positive");
    UniPolynomial::from_i128s(&cyclotomic_i128(d, &mut BTreeMap::new()))
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Memoised cyclotomic polynomials plus the operations that need them.
#[derive(Clone, Debug, Default)]
pub struct CyclotomicCache {
    ints: BTreeMap<usize, Vec<i128>>,
    polys: BTreeMap<usize, UniPolynomial>,
}

impl CyclotomicCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, d: usize) -> &UniPolynomial {
        assert!(d > 0, "cyclotomic index must be positive");
        if !self.polys.contains_key(&d) {
            let c = cyclotomic_i128(d, &mut self.ints);
            self.polys.insert(d, UniPolynomial::from_i128s(&c));
        }
        &self.polys[&d]
    }

    /// Multiplicity of `Phi_d` as a factor of `p` (zero for the zero polynomial).
    pub fn order(&mut self, d: usize, p: &UniPolynomial) -> u32 {
        if p.is_zero() {
            return 0;
        }
        p.strip_factor(self.get(d)).0
    }

    /// `H / prod(1 - t^w)` in canonical form. The denominator only has
    /// cyclotomic factors, so cancelling those is enough.
    pub fn hilbert_fraction(&mut self, h: &UniPolynomial, weights: &[u32]) -> RationalFunction {
        if h.is_zero() {
            return RationalFunction::zero();
        }
        let max_w = weights.iter().copied().max().unwrap_or(0) as usize;
        let mut num = h.clone();
        let mut den = UniPolynomial::constant(rat(if weights.len() % 2 == 0 { 1 } else { -1 }));
        for e in 1..=max_w {
            let count = weights.iter().filter(|&&w| w as usize % e == 0).count() as u32;
            if count == 0 {
                continue;
            }
            let phi = self.get(e).clone();
            let mut cancelled = 0;
            while cancelled < count {
                match num.div_rem(&phi) {
                    Ok((q, r)) if r.is_zero() => {
                        num = q;
                        cancelled += 1;
                    }
                    _ => break,
                }
            }
            if count > cancelled {
                den = &den * &phi.pow(count - cancelled);
            }
        }
        RationalFunction::from_coprime(num, den)
    }

    /// Polar residue class of `f` at the primitive `d`-th roots of unity: with
    /// `f = P / (Phi_d Q')`, the class of `P / Q'` modulo `Phi_d`, as
    /// `euler_phi(d)` coefficients. Zero when `f` is regular there. The map is
    /// linear in `f`, and two functions with at most simple poles at those roots
    /// have equal classes exactly when their difference is regular there.
    pub fn residue_class(&mut self, d: usize, f: &RationalFunction) -> Result<Vec<Rational>> {
        let phi = self.get(d).clone();
        let width = phi.degree().expect("nonzero");
        let (order, rest) = f.denominator().strip_factor(&phi);
        let mut out = vec![Rational::zero(); width];
        match order {
            0 => return Ok(out),
            1 => {}
            _ => return Err(Error::HigherOrderPole { d: d as u32, order }),
        }
        let inv = rest.inverse_mod(&phi)?.expect("coprime after stripping");
        let class = (f.numerator() * &inv).rem(&phi)?;
        for (i, c) in class.coeffs().iter().enumerate() {
            out[i] = c.clone();
        }
        Ok(out)
    }
}

/// Convenience wrapper around [`CyclotomicCache::hilbert_fraction`].
pub fn hilbert_fraction(h: &UniPolynomial, weights: &[u32]) -> RationalFunction {
    CyclotomicCache::new().hilbert_fraction(h, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> UniPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p("-1 + t"));
        assert_eq!(cyclotomic(2), p("1 + t"));
        assert_eq!(cyclotomic(6), p("1 - t + t^2"));
        assert_eq!(cyclotomic(12), p("1 - t^2 + t^4"));
        // first index with a coefficient of absolute value 2
        assert!(cyclotomic(105).coeffs().contains(&rat(-2)));
    }

    #[test]
    fn product_over_divisors_is_t_pow_minus_one() {
        for n in 1..=40usize {
            let mut prod = UniPolynomial::one();
            for d in (1..=n).filter(|d| n % d == 0) {
                prod = &prod * &cyclotomic(d);
            }
            assert_eq!(prod, -&UniPolynomial::one_minus_t_pow(n));
            assert_eq!(cyclotomic(n).degree(), Some(euler_phi(n as u64) as usize));
        }
    }

    #[test]
    fn hilbert_fraction_matches_generic_reduction() {
        let h = p("1 - t^6");
        let weights = [1, 2, 3, 3];
        let mut den = UniPolynomial::one();
        for &w in &weights {
            den = &den * &UniPolynomial::one_minus_t_pow(w as usize);
        }
        let generic = RationalFunction::new(h.clone(), den).unwrap();
        assert_eq!(hilbert_fraction(&h, &weights), generic);
    }

    #[test]
    fn residue_class_detects_simple_pole() {
        let mut cache = CyclotomicCache::new();
        let f = RationalFunction::new(p("1"), p("1 - t^2")).unwrap();
        // 1/((1-t)(1+t)) near t = -1: P/Q' = 1/(1-t) = 1/2 mod (1+t)
        assert_eq!(cache.residue_class(2, &f).unwrap(), vec![Rational::new(1.into(), 2.into())]);
        assert_eq!(cache.residue_class(3, &f).unwrap(), vec![Rational::zero(); 2]);
        let g = RationalFunction::new(p("1"), p("1 + 2t + t^2")).unwrap();
        assert!(matches!(
            cache.residue_class(2, &g),
            Err(Error::HigherOrderPole { d: 2, order: 2 })
        ));
    }
}
