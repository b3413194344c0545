//! Orbifold Riemann–Roch pieces: initial term, per-point contributions,
//! candidate singularity types and basket enumeration.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{euler_phi, rat, CyclotomicCache, Rational, RationalFunction, UniPolynomial};
use crate::error::{Error, Result};

/// A cyclic quotient singularity `1/r(a_1, ..., a_n)`, with residues in
/// `[1, r-1]` kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotientSingularity {
    r: u32,
    weights: Vec<u32>,
}

impl QuotientSingularity {
    /// Reduces the weights mod `r` and sorts them. Fails for `r < 2`, an empty
    /// weight list, or a weight sharing a factor with `r`.
    pub fn new(r: u32, weights: &[i64]) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidSingularity(alloc::format!("index r = {} must be at least 2", r)));
        }
        if weights.is_empty() {
            return Err(Error::InvalidSingularity("no local weights".into()));
        }
        let mut out = Vec::with_capacity(weights.len());
        for &a in weights {
            let red = a.rem_euclid(r as i64) as u32;
            if red.gcd(&r) != 1 {
                return Err(Error::NonIsolated { r, a: red });
            }
            out.push(red);
        }
        out.sort_unstable();
        Ok(Self { r, weights: out })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn is_compatible(&self, k: i64) -> bool {
        (k + self.weight_sum()).rem_euclid(self.r as i64) == 0
    }

    pub fn check_compatible(&self, k: i64) -> Result<()> {
        if self.is_compatible(k) {
            Ok(())
        } else {
            Err(Error::IncompatibleCanonicalWeight {
                r: self.r,
                sum: k + self.weight_sum(),
            })
        }
    }

    /// Terminal 3-fold point: two of the three weights are opposite mod r,
    /// i.e. the type is `1/r(a, -a, b)`.
    pub fn is_terminal_3fold(&self) -> bool {
        if self.weights.len() != 3 {
            return false;
        }
        let w = &self.weights;
        (0..3).any(|i| (i + 1..3).any(|j| (w[i] + w[j]) % self.r == 0))
    }

    fn weight_sum(&self) -> i64 {
        self.weights.iter().map(|&a| a as i64).sum()
    }
}

impl fmt::Display for QuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(", self.r)?;
        for (i, a) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", a)?;
        }
        f.write_str(")")
    }
}

impl FromStr for QuotientSingularity {
    type Err = Error;

    /// Parses `1/r(a,b,c)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(alloc::format!("expected 1/r(a,...), got `{}`", s));
        let s = s.trim();
        let rest = s.strip_prefix("1/").ok_or_else(bad)?;
        let (r, tail) = rest.split_once('(').ok_or_else(bad)?;
        let inner = tail.strip_suffix(')').ok_or_else(bad)?;
        let r: u32 = r.trim().parse().map_err(|_| bad())?;
        let weights = inner
            .split(',')
            .map(|a| a.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(r, &weights)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasketEntry {
    pub multiplicity: u64,
    pub singularity: QuotientSingularity,
}

/// Singularity types with multiplicities, sorted by type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Basket {
    entries: Vec<BasketEntry>,
}

impl Basket {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Repeated types are merged by adding multiplicities.
    pub fn new(entries: impl IntoIterator<Item = (u64, QuotientSingularity)>) -> Self {
        let mut merged: BTreeMap<QuotientSingularity, u64> = BTreeMap::new();
        for (m, q) in entries {
            *merged.entry(q).or_insert(0) += m;
        }
        Self {
            entries: merged
                .into_iter()
                .map(|(singularity, multiplicity)| BasketEntry {
                    multiplicity,
                    singularity,
                })
                .collect(),
        }
    }

    pub fn entries(&self) -> &[BasketEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.iter().all(|e| e.multiplicity == 0)
    }

    /// Number of distinct types (the length of the basket).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn total_points(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Drops zero-multiplicity entries.
    pub fn nonzero(&self) -> Self {
        Self {
            entries: self.entries.iter().filter(|e| e.multiplicity > 0).cloned().collect(),
        }
    }

    /// `sum m_i P_{Q_i}` for canonical weight `k`.
    pub fn contribution(&self, k: i64, cache: &mut ContributionCache) -> Result<RationalFunction> {
        let mut acc = RationalFunction::zero();
        for e in &self.entries {
            if e.multiplicity == 0 {
                continue;
            }
            let p = cache.qorb(&e.singularity, k)?.value.scale(&rat(e.multiplicity as i64));
            acc = &acc + &p;
        }
        Ok(acc)
    }
}

impl PartialOrd for Basket {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Basket {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let key = |b: &Basket| -> Vec<(QuotientSingularity, u64)> {
            b.entries.iter().map(|e| (e.singularity.clone(), e.multiplicity)).collect()
        };
        key(self).cmp(&key(other))
    }
}

impl fmt::Display for Basket {
    /// `9x1/2(1,1,1), 1/5(3,4,4)`; the empty basket prints as `empty`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let live: Vec<_> = self.entries.iter().filter(|e| e.multiplicity > 0).collect();
        if live.is_empty() {
            return f.write_str("empty");
        }
        for (i, e) in live.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if e.multiplicity > 1 {
                write!(f, "{}x", e.multiplicity)?;
            }
            write!(f, "{}", e.singularity)?;
        }
        Ok(())
    }
}

impl FromStr for Basket {
    type Err = Error;

    /// Inverse of `Display`; also accepts a bare list of types.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "empty" {
            return Ok(Self::empty());
        }
        let mut entries = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 0..=bytes.len() {
            let c = bytes.get(i).copied();
            match c {
                Some(b'(') => depth += 1,
                Some(b')') => depth -= 1,
                Some(b',') if depth == 0 => {}
                Some(_) => continue,
                None => {}
            }
            if c.is_none() || (c == Some(b',') && depth == 0) {
                let item = s[start..i].trim();
                start = i + 1;
                if item.is_empty() {
                    continue;
                }
                let (m, q) = match item.split_once('x') {
                    Some((m, q)) if !m.contains('/') => (
                        m.trim().parse::<u64>().map_err(|_| Error::Parse(item.to_string()))?,
                        q,
                    ),
                    _ => (1, item),
                };
                entries.push((m, q.parse()?));
            }
        }
        Ok(Self::new(entries))
    }
}

/// The contribution `P_Q(t) = B(t) / ((1-t)^n (1-t^r))` of one orbifold point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldContribution {
    pub singularity: QuotientSingularity,
    pub k: i64,
    pub value: RationalFunction,
    /// `t^m beta` before dividing by `t^shift`.
    pub numerator_b: UniPolynomial,
    /// Nonzero only when the support window starts below degree 0.
    pub shift: u32,
}

impl OrbifoldContribution {
    /// Exponent range `[lo, hi]` of `B = numerator_b / t^shift`.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.numerator_b.valuation()? as i64 - self.shift as i64;
        let hi = self.numerator_b.degree()? as i64 - self.shift as i64;
        Some((lo, hi))
    }
}

/// The orbifold contribution of `sing` on a variety with canonical weight `k`.
pub fn qorb(sing: &QuotientSingularity, k: i64) -> Result<OrbifoldContribution> {
    sing.check_compatible(k)?;
    let r = sing.r as usize;
    let n = sing.dim();
    let pi = sing
        .weights
        .iter()
        .fold(UniPolynomial::one(), |acc, &a| &acc * &UniPolynomial::one_minus_t_pow(a as usize));
    let one_minus_tr = UniPolynomial::one_minus_t_pow(r);
    let h = one_minus_tr.gcd(&pi)?.degree().expect("nonzero gcd") as i64;
    let l = (k + n as i64 + 1).div_euclid(2) + h;
    let de = if l < 0 { Integer::div_ceil(&(-l), &(r as i64)) } else { 0 };
    let m = (l + de * r as i64) as usize;
    let one_minus_t = UniPolynomial::one_minus_t_pow(1);
    let a = one_minus_tr.exact_div(&one_minus_t)?;
    let b0 = pi.exact_div(&one_minus_t.pow(n as u32))?;
    let (g, _, beta) = a.xgcd(&(&UniPolynomial::t_pow(m) * &b0))?;
    let numerator_b = &UniPolynomial::t_pow(m) * &beta;
    let shift = (de * r as i64) as usize;
    let den = &(&g * &one_minus_t.pow(n as u32)) * &(&one_minus_tr * &UniPolynomial::t_pow(shift));
    let value = RationalFunction::new(numerator_b.clone(), den)?;
    Ok(OrbifoldContribution {
        singularity: sing.clone(),
        k,
        value,
        numerator_b,
        shift: shift as u32,
    })
}

/// The initial term `P_I = A(t) / (1-t)^{n+1}`, with `A` Gorenstein symmetric
/// of degree `c = k + n + 1` and agreeing with `P` through degree `c/2`.
pub fn initial_term(p: &RationalFunction, n: usize, k: i64) -> Result<RationalFunction> {
    let c = k + n as i64 + 1;
    if c < 0 {
        return Ok(RationalFunction::zero());
    }
    let c = c as usize;
    let half = c / 2;
    let f = p.series(half)?.to_polynomial();
    let den = UniPolynomial::one_minus_t_pow(1).pow(n as u32 + 1);
    let pp = &f * &den;
    let mut coeffs = vec![Rational::zero(); c + 1];
    let top = if c % 2 == 0 { half } else { half + 1 };
    for i in 0..top {
        let ci = pp.coeff(i);
        coeffs[i] += &ci;
        coeffs[c - i] += &ci;
    }
    if c % 2 == 0 {
        coeffs[half] += pp.coeff(half);
    }
    RationalFunction::new(UniPolynomial::from_coeffs(coeffs), den)
}

/// All subset gcds of `weights` exceeding 1, appended to `weights` when not
/// already present; sorted.
pub fn extended_weights(weights: &[u32]) -> Vec<u32> {
    let mut gcds: Vec<u32> = Vec::new();
    for &w in weights {
        let mut next = gcds.clone();
        next.push(w);
        for &g in &gcds {
            next.push(g.gcd(&w));
        }
        next.sort_unstable();
        next.dedup();
        gcds = next;
    }
    let mut out = weights.to_vec();
    for g in gcds {
        if g > 1 && !weights.contains(&g) {
            out.push(g);
        }
    }
    out.sort_unstable();
    out
}

/// Candidate singularity types of an `n`-fold with canonical weight `k` in
/// `P[weights]`, ordered by index and then by local weights, together with the
/// extended weight multiset used for admissibility tests.
///
/// Local weights are residues of the original weights only.
pub fn porb_cont(weights: &[u32], n: usize, k: i64) -> (Vec<QuotientSingularity>, Vec<u32>) {
    let extended = extended_weights(weights);
    let mut indices: Vec<u32> = extended.iter().copied().filter(|&r| r > 1).collect();
    indices.dedup();
    let mut types = Vec::new();
    for r in indices {
        let residues: Vec<u32> = {
            let mut v: Vec<u32> = weights.iter().filter(|&&a| a.gcd(&r) == 1).map(|&a| a % r).collect();
            v.sort_unstable();
            v
        };
        if residues.len() < n {
            continue;
        }
        let mut found: Vec<Vec<u32>> = Vec::new();
        sub_multisets(&residues, n, &mut Vec::new(), 0, &mut |sel| {
            let sum: i64 = sel.iter().map(|&a| a as i64).sum::<i64>() + k;
            if sum.rem_euclid(r as i64) == 0 {
                found.push(sel.to_vec());
            }
        });
        found.sort();
        found.dedup();
        types.extend(found.into_iter().map(|w| QuotientSingularity { r, weights: w }));
    }
    (types, extended)
}

/// Distinct sorted sub-multisets of size `n` of the sorted list `items`.
fn sub_multisets(items: &[u32], n: usize, cur: &mut Vec<u32>, from: usize, emit: &mut impl FnMut(&[u32])) {
    if cur.len() == n {
        emit(cur);
        return;
    }
    let mut i = from;
    while i < items.len() {
        if items.len() - i < n - cur.len() {
            break;
        }
        cur.push(items[i]);
        sub_multisets(items, n, cur, i + 1, emit);
        cur.pop();
        let v = items[i];
        while i < items.len() && items[i] == v {
            i += 1;
        }
    }
}

/// Multiplicity of each value in a multiset.
pub(crate) fn capacities(weights: &[u32]) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for &w in weights {
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

/// Whether the indices of `chosen` form a sub-multiset of `weights`.
pub fn admissible(chosen: &[&QuotientSingularity], weights: &[u32]) -> bool {
    let caps = capacities(weights);
    let mut used: BTreeMap<u32, usize> = BTreeMap::new();
    for q in chosen {
        let u = used.entry(q.r).or_insert(0);
        *u += 1;
        if *u > caps.get(&q.r).copied().unwrap_or(0) {
            return false;
        }
    }
    true
}

/// Lazy enumeration of admissible type-sets: by size, then lexicographically
/// by position in `types`.
pub struct Baskets<'a> {
    types: &'a [QuotientSingularity],
    weights: &'a [u32],
    max_size: usize,
    combo: Vec<usize>,
}

impl Iterator for Baskets<'_> {
    type Item = Vec<QuotientSingularity>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.types.len();
        loop {
            if !self.advance(n) {
                return None;
            }
            let chosen: Vec<&QuotientSingularity> = self.combo.iter().map(|&i| &self.types[i]).collect();
            if admissible(&chosen, self.weights) {
                return Some(chosen.into_iter().cloned().collect());
            }
        }
    }
}

impl Baskets<'_> {
    fn advance(&mut self, n: usize) -> bool {
        let s = self.combo.len();
        if s == 0 {
            if self.max_size == 0 {
                return false;
            }
            self.combo = vec![0];
            return true;
        }
        let mut i = s;
        while i > 0 {
            i -= 1;
            if self.combo[i] < n - (s - i) {
                self.combo[i] += 1;
                for j in i + 1..s {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return true;
            }
        }
        if s >= self.max_size {
            return false;
        }
        self.combo = (0..=s).collect();
        true
    }
}

/// Every admissible subset of `types` of size `1..=min(#types, #weights)`.
pub fn baskets<'a>(types: &'a [QuotientSingularity], weights: &'a [u32]) -> Baskets<'a> {
    Baskets {
        types,
        weights,
        max_size: types.len().min(weights.len()),
        combo: Vec::new(),
    }
}

/// Memoised contributions and their polar residue classes.
#[derive(Clone, Debug, Default)]
pub struct ContributionCache {
    pub cyclotomic: CyclotomicCache,
    contributions: BTreeMap<(QuotientSingularity, i64), OrbifoldContribution>,
    residues: BTreeMap<(QuotientSingularity, i64, u32), Vec<Rational>>,
}

impl ContributionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn qorb(&mut self, sing: &QuotientSingularity, k: i64) -> Result<&OrbifoldContribution> {
        let key = (sing.clone(), k);
        if !self.contributions.contains_key(&key) {
            let c = qorb(sing, k)?;
            self.contributions.insert(key.clone(), c);
        }
        Ok(&self.contributions[&key])
    }

    /// Residue class of `P_Q` at the primitive `d`-th roots of unity.
    pub fn residue(&mut self, sing: &QuotientSingularity, k: i64, d: u32) -> Result<&[Rational]> {
        let key = (sing.clone(), k, d);
        if !self.residues.contains_key(&key) {
            let value = self.qorb(sing, k)?.value.clone();
            let class = self.cyclotomic.residue_class(d as usize, &value)?;
            self.residues.insert(key.clone(), class);
        }
        Ok(&self.residues[&key])
    }
}

/// Divisors `d >= 2` of any index in `types`, descending.
pub(crate) fn pole_orders(types: &[QuotientSingularity]) -> Vec<u32> {
    let mut ds: Vec<u32> = Vec::new();
    for q in types {
        for d in 2..=q.r {
            if q.r % d == 0 {
                ds.push(d);
            }
        }
    }
    ds.sort_unstable_by(|a, b| b.cmp(a));
    ds.dedup();
    ds
}

/// Subsets of size at least 2 of `types`, admissible against `weights`,
/// whose contributions sum to zero.
pub fn basket_kernel(types: &[QuotientSingularity], weights: &[u32], k: i64) -> Result<Vec<Vec<QuotientSingularity>>> {
    basket_kernel_with(&mut ContributionCache::new(), types, weights, k)
}

/// As [`basket_kernel`] with a shared cache.
///
/// A zero sum has zero residue class at every root of unity other than 1, so
/// the search fixes the types of index `d` for `d` descending and discards a
/// partial choice once the classes at `d` fail to cancel. Survivors are
/// confirmed by exact summation.
pub fn basket_kernel_with(
    cache: &mut ContributionCache,
    types: &[QuotientSingularity],
    weights: &[u32],
    k: i64,
) -> Result<Vec<Vec<QuotientSingularity>>> {
    let mut types: Vec<QuotientSingularity> = types.iter().filter(|q| q.is_compatible(k)).cloned().collect();
    types.sort();
    types.dedup();
    let caps = capacities(weights);
    let stages = pole_orders(&types);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    kernel_stage(cache, &types, &caps, &stages, 0, k, &mut chosen, &mut out)?;
    out.sort_by(|a: &Vec<QuotientSingularity>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn kernel_stage(
    cache: &mut ContributionCache,
    types: &[QuotientSingularity],
    caps: &BTreeMap<u32, usize>,
    stages: &[u32],
    stage: usize,
    k: i64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<QuotientSingularity>>,
) -> Result<()> {
    if stage == stages.len() {
        if chosen.len() < 2 {
            return Ok(());
        }
        let mut sum = RationalFunction::zero();
        for &i in chosen.iter() {
            sum = &sum + &cache.qorb(&types[i], k)?.value;
        }
        if sum.is_zero() {
            let mut set: Vec<QuotientSingularity> = chosen.iter().map(|&i| types[i].clone()).collect();
            set.sort();
            out.push(set);
        }
        return Ok(());
    }
    let d = stages[stage];
    let group: Vec<usize> = (0..types.len()).filter(|&i| types[i].r == d).collect();
    let cap = caps.get(&d).copied().unwrap_or(0).min(group.len());
    let width = euler_phi(d as u64) as usize;

    // classes of the types already fixed whose index is a multiple of d
    let mut base = vec![Rational::zero(); width];
    for &i in chosen.iter() {
        if types[i].r % d == 0 {
            for (b, c) in base.iter_mut().zip(cache.residue(&types[i], k, d)?) {
                *b += c;
            }
        }
    }
    let mut subset: Vec<usize> = Vec::new();
    for_each_subset(group.len(), cap, &mut subset, 0, &mut |sel| {
        let mut acc = base.clone();
        for &g in sel {
            for (a, c) in acc.iter_mut().zip(cache.residue(&types[group[g]], k, d)?) {
                *a += c;
            }
        }
        if acc.iter().all(Zero::is_zero) {
            let before = chosen.len();
            chosen.extend(sel.iter().map(|&g| group[g]));
            kernel_stage(cache, types, caps, stages, stage + 1, k, chosen, out)?;
            chosen.truncate(before);
        }
        Ok(())
    })
}

/// Calls `f` on every subset of `0..n` of size at most `max`, smallest first
/// within each branch.
pub(crate) fn for_each_subset(
    n: usize,
    max: usize,
    cur: &mut Vec<usize>,
    from: usize,
    f: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    f(cur)?;
    if cur.len() == max {
        return Ok(());
    }
    for i in from..n {
        cur.push(i);
        for_each_subset(n, max, cur, i + 1, f)?;
        cur.pop();
    }
    Ok(())
}

/// `1/r(a_1,..)` strings for a list of types.
pub fn format_types(types: &[QuotientSingularity]) -> String {
    let parts: Vec<String> = types.iter().map(|q| q.to_string()).collect();
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> UniPolynomial {
        s.parse().unwrap()
    }

    fn rf(n: &str, d: &str) -> RationalFunction {
        alloc::format!("({})/({})", n, d).parse().unwrap()
    }

    fn q(r: u32, w: &[i64]) -> QuotientSingularity {
        QuotientSingularity::new(r, w).unwrap()
    }

    #[test]
    fn half_point_on_x7() {
        let c = qorb(&q(2, &[1, 1, 1]), 1).unwrap();
        assert_eq!(c.numerator_b, p("-t^3"));
        assert_eq!(c.value, rf("-t^3", "(1 - t)^3 * (1 - t^2)"));
    }

    #[test]
    fn fifth_point() {
        let c = qorb(&q(5, &[3, 3, 4]), 0).unwrap();
        assert_eq!(c.value, rf("t^3 - t^4 + t^5", "(1 - t)^3 * (1 - t^5)"));
    }

    #[test]
    fn incompatible_and_nonisolated() {
        assert!(matches!(qorb(&q(2, &[1, 1, 1]), 0), Err(Error::IncompatibleCanonicalWeight { .. })));
        assert!(matches!(QuotientSingularity::new(4, &[1, 2, 3]), Err(Error::NonIsolated { r: 4, a: 2 })));
        assert!(QuotientSingularity::new(1, &[1]).is_err());
    }

    #[test]
    fn x7_initial_term() {
        let px = rf("1 - t^7", "(1 - t)^4 * (1 - t^2)");
        let pi = initial_term(&px, 3, 1).unwrap();
        assert_eq!(pi, rf("1 + t^2 + t^3 + t^5", "(1 - t)^4"));
        let pq = qorb(&q(2, &[1, 1, 1]), 1).unwrap().value;
        assert_eq!(&pi + &pq, px);
    }

    #[test]
    fn initial_term_edge_cases() {
        let px = rf("1", "(1 - t)^4");
        assert!(initial_term(&px, 3, -5).unwrap().is_zero());
        assert_eq!(initial_term(&px, 3, -4).unwrap(), px);
    }

    #[test]
    fn porb_cont_examples() {
        let (types, ext) = porb_cont(&[1, 1, 1, 1, 2], 3, 1);
        assert_eq!(types, [q(2, &[1, 1, 1])]);
        assert_eq!(ext, [1, 1, 1, 1, 2]);
        assert!(porb_cont(&[1; 6], 3, 0).0.is_empty());
        let (types, _) = porb_cont(&[1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 5], 3, -1);
        assert!(types.contains(&q(2, &[1, 1, 1])));
        assert!(types.contains(&q(5, &[3, 4, 4])));
        assert!(types.iter().all(|t| t.is_compatible(-1)));
    }

    #[test]
    fn gcd_closure_is_full() {
        // gcd(6, 10, 15) over pairs gives 2, 3, 5; the triple adds nothing new,
        // but gcd(12, 18, 8) needs the closure step 12,18 -> 6 -> gcd(6, 8) = 2.
        assert_eq!(extended_weights(&[12, 18, 8]), [2, 4, 6, 8, 12, 18]);
        assert_eq!(extended_weights(&[6, 10, 15]), [2, 3, 5, 6, 10, 15]);
    }

    #[test]
    fn basket_enumeration() {
        let types = [q(2, &[1, 1, 1]), q(5, &[1, 2, 2])];
        let ext = [1, 2, 5];
        let all: Vec<_> = baskets(&types, &ext).collect();
        assert_eq!(all.len(), 3);
        assert_eq!(all[2].len(), 2);

        let types = [q(5, &[1, 2, 2]), q(5, &[3, 3, 4])];
        let all: Vec<_> = baskets(&types, &[1, 5]).collect();
        assert_eq!(all.len(), 2);
        let all: Vec<_> = baskets(&types, &[5, 5]).collect();
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn kernel_pair() {
        let types = [q(5, &[1, 2, 2]), q(5, &[3, 3, 4])];
        let sum = &qorb(&types[0], 0).unwrap().value + &qorb(&types[1], 0).unwrap().value;
        assert!(sum.is_zero());
        assert_eq!(basket_kernel(&types, &[5, 5], 0).unwrap(), [types.to_vec()]);
        assert!(basket_kernel(&types, &[1, 5], 0).unwrap().is_empty());
        let types = [q(2, &[1, 1, 1]), q(5, &[3, 4, 4])];
        assert!(basket_kernel(&types, &[2, 5], -1).unwrap().is_empty());
    }

    #[test]
    fn terminal_form() {
        assert!(q(5, &[1, 4, 2]).is_terminal_3fold());
        assert!(q(2, &[1, 1, 1]).is_terminal_3fold());
        assert!(!q(5, &[3, 4, 4]).is_terminal_3fold());
        assert!(q(7, &[1, 2, 5]).is_terminal_3fold());
        assert!(!q(7, &[1, 1, 4]).is_terminal_3fold());
    }

    #[test]
    fn basket_text_round_trip() {
        let b = Basket::new([(9, q(2, &[1, 1, 1])), (1, q(5, &[3, 4, 4]))]);
        assert_eq!(b.to_string(), "9x1/2(1,1,1), 1/5(3,4,4)");
        assert_eq!(b.to_string().parse::<Basket>().unwrap(), b);
        assert_eq!("empty".parse::<Basket>().unwrap(), Basket::empty());
    }
}
