//! Serialized forms of candidates and sweep journals.
//!
//! Rationals are written as `{"num": "...", "den": "..."}` with decimal
//! strings so nothing is lost to floating point.

use std::fmt;

use serde::{Deserialize, Serialize};
use wflag_core::arith::Rational;
use wflag_core::flag::{CocharacterParam, FormatKind};
use wflag_core::orbifold::{Basket, QuotientSingularity};
use wflag_core::search::{Candidate, SearchConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalJson> for Rational {
    type Error = anyhow::Error;
    fn try_from(r: &RationalJson) -> anyhow::Result<Self> {
        let den: num_bigint::BigInt = r.den.parse()?;
        anyhow::ensure!(den != 0.into(), "zero denominator in {}/{}", r.num, r.den);
        Ok(Rational::new(r.num.parse()?, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasketEntryJson {
    pub multiplicity: u64,
    pub r: u32,
    #[serde(rename = "type")]
    pub weights: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub format: String,
    pub mu: Vec<i64>,
    pub u: i64,
    pub weights: Vec<u32>,
    pub k: i64,
    pub n: usize,
    pub degree: RationalJson,
    pub basket: Vec<BasketEntryJson>,
    /// Each kernel as a list of types such as `1/5(1,2,3)`.
    pub kernels: Vec<Vec<String>>,
    pub smooth: bool,
    pub numerator: Vec<i64>,
}

impl From<&Candidate> for CandidateJson {
    fn from(c: &Candidate) -> Self {
        Self {
            format: c.format.name().to_string(),
            mu: c.param.mu.clone(),
            u: c.param.u,
            weights: c.x_weights.clone(),
            k: c.k,
            n: c.n,
            degree: (&c.degree).into(),
            basket: c
                .basket
                .entries()
                .iter()
                .map(|e| BasketEntryJson {
                    multiplicity: e.multiplicity,
                    r: e.singularity.r(),
                    weights: e.singularity.weights().to_vec(),
                })
                .collect(),
            kernels: c.kernels.iter().map(|k| k.iter().map(|q| q.to_string()).collect()).collect(),
            smooth: c.smooth,
            numerator: c.numerator.clone(),
        }
    }
}

impl TryFrom<&CandidateJson> for Candidate {
    type Error = anyhow::Error;
    fn try_from(j: &CandidateJson) -> anyhow::Result<Self> {
        let mut entries = Vec::with_capacity(j.basket.len());
        for e in &j.basket {
            let w: Vec<i64> = e.weights.iter().map(|&a| a as i64).collect();
            entries.push((e.multiplicity, QuotientSingularity::new(e.r, &w)?));
        }
        let kernels = j
            .kernels
            .iter()
            .map(|k| k.iter().map(|q| q.parse::<QuotientSingularity>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Candidate {
            format: j.format.parse::<FormatKind>()?,
            param: CocharacterParam::new(j.mu.clone(), j.u),
            x_weights: j.weights.clone(),
            k: j.k,
            n: j.n,
            degree: (&j.degree).try_into()?,
            basket: Basket::new(entries),
            kernels,
            smooth: j.smooth,
            numerator: j.numerator.clone(),
        })
    }
}

/// Identifies one embedding of one sweep: `(format, mu, u, k, n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SweepKey {
    pub format: String,
    pub mu: Vec<i64>,
    pub u: i64,
    pub k: i64,
    pub n: usize,
}

impl SweepKey {
    pub fn new(config: &SearchConfig, param: &CocharacterParam) -> Self {
        Self {
            format: config.format.name().to_string(),
            mu: param.mu.clone(),
            u: param.u,
            k: config.k,
            n: config.n,
        }
    }
}

impl fmt::Display for SweepKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mu: Vec<String> = self.mu.iter().map(|m| m.to_string()).collect();
        write!(f, "{} ({}:{}) k={} n={}", self.format, mu.join(","), self.u, self.k, self.n)
    }
}

/// One output line: a candidate, the time spent on its embedding, and the key
/// of that embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub candidate: CandidateJson,
    /// Milliseconds spent on the embedding that produced the candidate.
    pub timing: u64,
    pub sweep_key: SweepKey,
}

impl ResultRecord {
    pub fn new(candidate: &Candidate, timing: u64, sweep_key: SweepKey) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            candidate: candidate.into(),
            timing,
            sweep_key,
        }
    }
}

/// Marks an embedding as finished in a resume journal, however many
/// candidates it produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionRecord {
    pub schema_version: u32,
    pub completed: SweepKey,
    pub candidates: usize,
    pub tuples: usize,
    pub timing: u64,
    /// Set when the embedding failed; its candidates are then absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// A line of a resume journal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JournalLine {
    Result(Box<ResultRecord>),
    Completion(CompletionRecord),
}

#[cfg(test)]
mod tests {
    use super::*;
    use wflag_core::arith::ratio;

    #[test]
    fn rational_round_trip() {
        for r in [ratio(9, 10), ratio(-18, 91), ratio(18, 1)] {
            let j = RationalJson::from(&r);
            assert_eq!(Rational::try_from(&j).unwrap(), r);
        }
        let j: RationalJson = serde_json::from_str(r#"{"num":"4","den":"0"}"#).unwrap();
        assert!(Rational::try_from(&j).is_err());
    }
}
