use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::character::CharacterTable;
use super::format::{ambient_weights, CocharacterParam, FormatKind, FormatSpec};
use super::lie::{apply, dot, transpose, Weight};
use crate::arith::{CyclotomicCache, RationalFunction, UniPolynomial};
use crate::error::{Error, Result};

/// A concrete embedding `w Sigma(mu, u)` in weighted projective space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingData {
    pub format: FormatKind,
    pub param: CocharacterParam,
    /// Sorted ascending.
    pub ambient_weights: Vec<u32>,
    /// Hilbert numerator coefficients, exponent `i` at index `i`.
    pub numerator_coeffs: Vec<i64>,
    pub adjunction_q: u32,
    /// `q - sum(ambient_weights)`.
    pub canonical_weight: i64,
}

impl EmbeddingData {
    pub fn numerator(&self) -> UniPolynomial {
        UniPolynomial::from_coeffs(self.numerator_coeffs.iter().map(|&c| crate::arith::rat(c)).collect())
    }

    /// `H / prod(1 - t^w)` in canonical form.
    pub fn hilbert_series(&self) -> RationalFunction {
        CyclotomicCache::new().hilbert_fraction(&self.numerator(), &self.ambient_weights)
    }
}

/// Compute the embedding data with a throwaway character table.
pub fn hilbert_series(format: &FormatSpec, param: &CocharacterParam) -> Result<EmbeddingData> {
    hilbert_series_with(format, &mut format.character_table(), param)
}

/// As [`hilbert_series`], reusing the multiplicities memoised in `table`.
pub fn hilbert_series_with(
    format: &FormatSpec,
    table: &mut CharacterTable,
    param: &CocharacterParam,
) -> Result<EmbeddingData> {
    let weights = ambient_weights(format, param)?;
    let total: usize = weights.iter().map(|&w| w as usize).sum();
    let w_min = weights[0] as usize;
    let mu = param.mu_vector();
    let u = param.u;

    // The numerator has degree exactly `q` (Gorenstein with known canonical
    // weight), so graded dimensions through `q` determine it.
    let top = format.expected_adjunction(param).max(0) as usize;
    // Sum over W instead of over each orbit: <w lambda, mu> = <lambda, w^T mu>,
    // and every orbit element is hit |W| / orbit_size times.
    let images: Vec<Weight> = table
        .root_data()
        .weyl_group()
        .iter()
        .map(|w| apply(&transpose(&w.matrix), &mu))
        .collect();
    let order = images.len() as i128;
    let mut series = vec![0i128; top + 1];
    for d in 0..=top / w_min {
        let shift = d as i64 * u;
        let (_, dominant) = table.level(d);
        for dw in dominant {
            let weight = dw.multiplicity as i128 * dw.orbit_size as i128;
            for img in &images {
                let m = dot(&dw.weight, img) + shift;
                debug_assert!(m >= d as i64 * w_min as i64);
                if m <= top as i64 {
                    series[m as usize] += weight;
                }
            }
        }
    }
    for c in series.iter_mut() {
        debug_assert!(*c % order == 0);
        *c /= order;
    }

    let mut h = series;
    for &w in &weights {
        let w = w as usize;
        for i in (w..=top).rev() {
            h[i] -= h[i - w];
        }
    }
    let q = h.iter().rposition(|&c| c != 0).unwrap_or(0);
    let sign = if format.codimension % 2 == 0 { 1 } else { -1 };
    let symmetric = (0..=q).all(|i| h[q - i] == sign * h[i]);
    if h[0] != 1 || !symmetric {
        return Err(Error::Inconsistent(format!(
            "Hilbert numerator for {} ({}) fails H(0) = 1 or Gorenstein symmetry",
            format.name(),
            param
        )));
    }
    let expected = format.expected_adjunction(param);
    if q as i64 != expected {
        return Err(Error::Inconsistent(format!(
            "adjunction number {} differs from the expected {} for {} ({})",
            q,
            expected,
            format.name(),
            param
        )));
    }
    h.truncate(q + 1);
    if is_regular(format, param) && !closed_form_agrees(format, param, &weights, &h) {
        return Err(Error::Inconsistent(format!(
            "weight-multiplicity series disagrees with the Weyl closed form for {} ({})",
            format.name(),
            param
        )));
    }

    let numerator_coeffs = h
        .into_iter()
        .map(|c| i64::try_from(c).map_err(|_| Error::Inconsistent("numerator coefficient exceeds i64".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(EmbeddingData {
        format: format.kind,
        param: param.clone(),
        ambient_weights: weights,
        numerator_coeffs,
        adjunction_q: q as u32,
        canonical_weight: q as i64 - total as i64,
    })
}

/// `mu` is regular when it lies on no wall, i.e. `<alpha, mu> != 0` for every
/// root. This is exactly when the Weyl denominator of the closed form,
/// `prod (t^{<alpha,mu>/2} - t^{-<alpha,mu>/2})`, is nonzero.
pub fn is_regular(format: &FormatSpec, param: &CocharacterParam) -> bool {
    let mu = param.mu_vector();
    format.root_data().positive_roots().iter().all(|a| dot(a, &mu) != 0)
}

struct WeylTerm {
    sign: i64,
    rho_exp: i64,
    lambda_exp: i64,
}

fn weyl_terms(format: &FormatSpec, param: &CocharacterParam) -> Vec<WeylTerm> {
    let mu: Weight = param.mu_vector();
    format
        .root_data()
        .weyl_group()
        .iter()
        .map(|w| WeylTerm {
            sign: w.sign as i64,
            rho_exp: dot(&apply(&w.matrix, &format.rho), &mu),
            lambda_exp: dot(&apply(&w.matrix, &format.lambda), &mu) + param.u,
        })
        .collect()
}

fn mul_i128(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_t_pow(e: usize) -> Vec<i128> {
    let mut v = vec![0i128; e + 1];
    v[0] += 1;
    v[e] -= 1;
    v
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Numerator and denominator of the Weyl closed form after clearing the
/// negative exponents and the `1 - t^e` factors: the series equals
/// `num / (weyl_denominator * E)` with `E = prod over distinct e of (1 - t^e)`.
fn closed_form_parts(format: &FormatSpec, param: &CocharacterParam) -> (Vec<i128>, Vec<i128>) {
    let terms = weyl_terms(format, param);
    let low = terms.iter().map(|t| t.rho_exp).min().expect("nonempty Weyl group");
    let high = terms.iter().map(|t| t.rho_exp).max().expect("nonempty Weyl group");
    let mut exps: BTreeMap<i64, ()> = BTreeMap::new();
    for t in &terms {
        exps.insert(t.lambda_exp, ());
    }
    let mut weyl_den = vec![0i128; (high - low) as usize + 1];
    for t in &terms {
        weyl_den[(t.rho_exp - low) as usize] += t.sign as i128;
    }
    let mut num: Vec<i128> = vec![0];
    for t in &terms {
        let mut part = vec![0i128; (t.rho_exp - low) as usize + 1];
        part[(t.rho_exp - low) as usize] = t.sign as i128;
        for &e in exps.keys() {
            if e != t.lambda_exp {
                part = mul_i128(&part, &one_minus_t_pow(e as usize));
            }
        }
        if part.len() > num.len() {
            num.resize(part.len(), 0);
        }
        for (a, b) in num.iter_mut().zip(&part) {
            *a += b;
        }
    }
    let mut den = trim(weyl_den);
    for &e in exps.keys() {
        den = mul_i128(&den, &one_minus_t_pow(e as usize));
    }
    (trim(num), den)
}

fn closed_form_agrees(format: &FormatSpec, param: &CocharacterParam, weights: &[u32], h: &[i128]) -> bool {
    let (num, den) = closed_form_parts(format, param);
    let mut rhs = num;
    for &w in weights {
        rhs = mul_i128(&rhs, &one_minus_t_pow(w as usize));
    }
    trim(mul_i128(h, &den)) == trim(rhs)
}

/// The Weyl closed form as an exact rational function; `None` when `mu` is
/// not regular and the Weyl denominator vanishes.
pub fn closed_form_series(format: &FormatSpec, param: &CocharacterParam) -> Result<Option<RationalFunction>> {
    format.check_param(param)?;
    ambient_weights(format, param)?;
    if !is_regular(format, param) {
        return Ok(None);
    }
    let (num, den) = closed_form_parts(format, param);
    let f = RationalFunction::new(UniPolynomial::from_i128s(&num), UniPolynomial::from_i128s(&den))?;
    Ok(Some(f))
}

/// Bound on the parameters enumerated by [`enumerate_parameters`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamBound {
    /// `1 <= u <= max`; only meaningful for g2, where u fixes the adjunction number.
    MaxU(i64),
    /// Adjunction number at most `max`.
    MaxQ(i64),
}

/// One representative per distinct ambient weight multiset, ordered by
/// weight sum and then lexicographically by weights.
///
/// g2 takes the lexicographically least `(a, b)` of each class. For gr25, `mu`
/// and `mu + c(1,..,1)` with `u - 2c` give the same weights, as do half-integral
/// `mu` with `u` shifted by one, so `mu` runs over sorted integer vectors and
/// `u` over `{1, 2}`.
pub fn enumerate_parameters(format: &FormatSpec, bound: ParamBound) -> Result<Vec<(CocharacterParam, Vec<u32>)>> {
    let mut classes: BTreeMap<(u64, Vec<u32>), CocharacterParam> = BTreeMap::new();
    let mut offer = |param: CocharacterParam| {
        if let Ok(w) = ambient_weights(format, &param) {
            let key = (w.iter().map(|&x| x as u64).sum(), w);
            classes
                .entry(key)
                .and_modify(|p| {
                    if param < *p {
                        *p = param.clone();
                    }
                })
                .or_insert(param);
        }
    };
    match format.kind {
        FormatKind::G2 => {
            let u_max = match bound {
                ParamBound::MaxU(u) => u,
                ParamBound::MaxQ(q) => q.div_euclid(11),
            };
            for u in 1..=u_max {
                for a in -u..=u {
                    for b in -u..=u {
                        offer(CocharacterParam::new(vec![a, b], u));
                    }
                }
            }
        }
        FormatKind::Gr25 => {
            let q_max = match bound {
                ParamBound::MaxQ(q) => q,
                ParamBound::MaxU(_) => {
                    return Err(Error::UnsupportedBound(
                        "gr25 parameters are normalised to u in {1, 2}; bound the adjunction number instead".into(),
                    ))
                }
            };
            for u in 1..=2 {
                // q = 2 sum(mu) + 5u
                let s_max = (q_max - 5 * u).div_euclid(2);
                if s_max < -2 * u {
                    continue;
                }
                let mut mu = [0i64; 5];
                gr25_rec(&mut mu, 0, s_max, u, &mut offer);
            }
        }
    }
    Ok(classes.into_iter().map(|((_, w), p)| (p, w)).collect())
}

/// Sorted `mu` with `mu_0 + mu_1 + u >= 1` and `sum(mu) <= s_max`.
fn gr25_rec(mu: &mut [i64; 5], i: usize, s_max: i64, u: i64, offer: &mut impl FnMut(CocharacterParam)) {
    if i == 5 {
        offer(CocharacterParam::new(mu.to_vec(), u));
        return;
    }
    let partial: i64 = mu[..i].iter().sum();
    let lo = match i {
        0 => {
            // mu_0 + 4 mu_1 <= s_max with mu_1 >= 1 - u - mu_0
            let bound = (4 - 4 * u - s_max).div_euclid(3);
            bound - 1
        }
        1 => mu[0].max(1 - u - mu[0]),
        _ => mu[i - 1],
    };
    let mut x = lo;
    // remaining entries are at least x
    while partial + x * (5 - i) as i64 <= s_max {
        mu[i] = x;
        gr25_rec(mu, i + 1, s_max, u, offer);
        x += 1;
    }
}
