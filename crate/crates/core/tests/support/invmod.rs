//! Brute-force solve of the congruence defining an orbifold numerator,
//! independent of the extended-gcd route. Shared by several test targets.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{One, Zero};

type Q = Ratio<i128>;

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Coefficients of `f` in `Z[t]/(1 + t + .. + t^{r-1})`, basis `1..t^{r-2}`.
/// Exponents may be negative since `t^r = 1` in the quotient.
fn reduce(f: &BTreeMap<i64, i128>, r: u32) -> Vec<i128> {
    let r = r as i64;
    let mut v = vec![0i128; r as usize];
    for (&e, &c) in f {
        v[e.rem_euclid(r) as usize] += c;
    }
    let top = v.pop().unwrap();
    v.iter_mut().for_each(|x| *x -= top);
    v
}

pub fn mul(f: &BTreeMap<i64, i128>, g: &BTreeMap<i64, i128>) -> BTreeMap<i64, i128> {
    let mut out = BTreeMap::new();
    for (a, x) in f {
        for (b, y) in g {
            *out.entry(a + b).or_insert(0) += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `B` supported in `[c/2 + 1, c/2 + r - 1]` with
/// `B * prod (1 - t^a)/(1 - t) = 1` modulo `(1 - t^r)/(1 - t)`.
pub fn oracle(r: u32, a: &[u32], k: i64) -> BTreeMap<i64, i128> {
    let n = a.len() as i64;
    let lo = (k + n + 1).div_euclid(2) + 1;
    let mut unit = BTreeMap::new();
    unit.insert(0, 1i128);
    let pi = a.iter().fold(unit, |acc, &ai| {
        let geo: BTreeMap<i64, i128> = (0..ai as i64).map(|e| (e, 1)).collect();
        mul(&acc, &geo)
    });
    let dim = r as usize - 1;
    // column j is the image of t^{lo + j}
    let cols: Vec<Vec<i128>> = (0..dim)
        .map(|j| {
            let mono: BTreeMap<i64, i128> = [(lo + j as i64, 1)].into();
            reduce(&mul(&mono, &pi), r)
        })
        .collect();
    let mut m: Vec<Vec<Q>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Q> = (0..dim).map(|j| Q::from_integer(cols[j][i])).collect();
            row.push(if i == 0 { Q::one() } else { Q::zero() });
            row
        })
        .collect();
    for c in 0..dim {
        let p = (c..dim).find(|&i| !m[i][c].is_zero()).expect("congruence has a unique solution");
        m.swap(c, p);
        let piv = m[c][c];
        m[c].iter_mut().for_each(|x| *x /= piv);
        for i in 0..dim {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c];
                let pivot_row = m[c].clone();
                m[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= f * *y);
            }
        }
    }
    let mut b = BTreeMap::new();
    for (j, row) in m.iter().enumerate() {
        let x = row[dim];
        assert!(x.is_integer(), "oracle produced a non-integral coefficient");
        if !x.is_zero() {
            b.insert(lo + j as i64, x.to_integer());
        }
    }
    b
}

pub fn laurent_to_string(b: &BTreeMap<i64, i128>) -> String {
    let terms: Vec<String> = b.iter().map(|(e, c)| format!("({})*t^{}", c, e)).collect();
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}

pub fn isolated_types(r: u32) -> Vec<[u32; 3]> {
    let units: Vec<u32> = (1..r).filter(|&a| gcd(a, r) == 1).collect();
    let mut out = Vec::new();
    for (i, &a) in units.iter().enumerate() {
        for (j, &b) in units.iter().enumerate().skip(i) {
            for &c in &units[j..] {
                out.push([a, b, c]);
            }
        }
    }
    out
}
