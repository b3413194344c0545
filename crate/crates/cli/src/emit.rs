//! Candidate emitters. JSON lines are canonical; CSV and text carry the same
//! rows in the same order.

use std::io::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use wflag_core::search::Candidate;

use crate::record::ResultRecord;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    #[default]
    Json,
    Csv,
    Text,
}

/// `[1,2^4,3]` style weights.
pub fn weights_text(w: &[u32]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let j = w[i..].iter().take_while(|&&x| x == w[i]).count();
        parts.push(if j == 1 { w[i].to_string() } else { format!("{}^{}", w[i], j) });
        i += j;
    }
    format!("[{}]", parts.join(","))
}

fn basket_text(c: &Candidate) -> String {
    if c.basket.is_empty() {
        String::new()
    } else {
        c.basket.to_string()
    }
}

fn kernels_text(c: &Candidate) -> String {
    let sets: Vec<String> = c
        .kernels
        .iter()
        .map(|k| format!("{{{}}}", k.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    sets.join(" ")
}

const HEADER: [&str; 10] = ["format", "mu", "u", "weights", "k", "n", "degree", "basket", "bk", "kernels"];

fn row(c: &Candidate) -> [String; 10] {
    let mu: Vec<String> = c.param.mu.iter().map(|m| m.to_string()).collect();
    [
        c.format.name().to_string(),
        mu.join(","),
        c.param.u.to_string(),
        weights_text(&c.x_weights),
        c.k.to_string(),
        c.n.to_string(),
        c.degree.to_string(),
        basket_text(c),
        if c.has_kernel() { "Y" } else { "N" }.to_string(),
        kernels_text(c),
    ]
}

/// Writes `records` to `out` in the requested format.
pub fn write_records(out: &mut dyn Write, emit: Emit, records: &[ResultRecord]) -> anyhow::Result<()> {
    match emit {
        Emit::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(HEADER)?;
            for r in records {
                w.write_record(row(&Candidate::try_from(&r.candidate)?))?;
            }
            w.flush()?;
        }
        Emit::Text => {
            let rows = records
                .iter()
                .map(|r| Candidate::try_from(&r.candidate).map(|c| row(&c)))
                .collect::<anyhow::Result<Vec<_>>>()?;
            // the kernel list is long; it stays out of the aligned table
            let cols = HEADER.len() - 1;
            let mut width = [0usize; 10];
            for (i, h) in HEADER.iter().take(cols).enumerate() {
                width[i] = h.len();
            }
            for r in &rows {
                for i in 0..cols {
                    width[i] = width[i].max(r[i].chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> =
                    cells.iter().zip(&width).map(|(c, w)| format!("{:<w$}", c, w = *w)).collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(HEADER[..cols].to_vec()))?;
            for r in &rows {
                writeln!(out, "{}", line(r[..cols].iter().map(|s| s.as_str()).collect()))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_exponents() {
        assert_eq!(weights_text(&[1, 2, 2, 2, 2, 3, 5]), "[1,2^4,3,5]");
        assert_eq!(weights_text(&[1; 12]), "[1^12]");
        assert_eq!(weights_text(&[]), "[]");
    }
}
