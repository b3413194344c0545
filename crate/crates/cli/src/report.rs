//! The G2 Fano table: six `(weights, basket)` rows picked out of the
//! `k = -1`, `n = 3`, `u <= 7` sweep.

use std::fmt::Write as _;

use wflag_core::flag::FormatKind;
use wflag_core::orbifold::Basket;
use wflag_core::search::{Candidate, SearchConfig};

use crate::emit::weights_text;

/// Sweep whose output the table is drawn from.
pub fn table1_config() -> SearchConfig {
    SearchConfig::new(FormatKind::G2, -1, 3).with_u_range(1, 7)
}

/// `(label, weights, basket)` of each row.
pub const TABLE1_ROWS: [(&str, &[u32], &str); 6] = [
    ("0,0:1", &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1], ""),
    ("-1,1:3", &[1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 5], "9x1/2(1,1,1), 1/5(3,4,4)"),
    ("-1,1:4", &[2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5], "2x1/2(1,1,1), 6x1/3(1,1,2), 3x1/5(3,4,4)"),
    ("-2,3:4", &[1, 1, 2, 3, 3, 4, 4, 4, 5, 5, 6, 7], "2x1/4(1,1,3), 1/7(4,5,6)"),
    ("-4,6:7", &[1, 1, 3, 5, 5, 7, 7, 7, 9, 9, 11, 13], "2x1/7(1,2,5), 1/13(7,9,11)"),
    ("-3,4:7", &[2, 3, 4, 5, 6, 6, 7, 7, 8, 9, 10, 11], "7x1/2(1,1,1), 3x1/3(1,1,2), 1/11(6,7,10)"),
];

/// The candidate matching each row, in row order.
pub fn table1_rows(candidates: &[Candidate]) -> Vec<(&'static str, Option<&Candidate>)> {
    TABLE1_ROWS
        .iter()
        .map(|(label, w, b)| {
            let basket: Basket = if b.is_empty() { Basket::empty() } else { b.parse().expect("static basket") };
            let hit = candidates.iter().find(|c| c.x_weights == *w && c.basket == basket);
            (*label, hit)
        })
        .collect()
}

/// Aligned text rendering; missing rows are marked.
pub fn render_table1(candidates: &[Candidate]) -> String {
    let mut out = String::new();
    let rows: Vec<[String; 5]> = table1_rows(candidates)
        .into_iter()
        .zip(TABLE1_ROWS.iter())
        .map(|((label, hit), (_, w, b))| match hit {
            Some(c) => [
                format!("({})", c.param),
                weights_text(&c.x_weights),
                c.degree.to_string(),
                if c.basket.is_empty() { "-".into() } else { c.basket.to_string() },
                if c.has_kernel() { "Y" } else { "N" }.into(),
            ],
            None => [
                format!("({})", label),
                weights_text(w),
                "missing".into(),
                b.to_string(),
                "?".into(),
            ],
        })
        .collect();
    let header = ["(mu:u)", "weights", "degree", "basket", "BK"];
    let mut width = header.map(str::len);
    for r in &rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut line = |cells: &[&str]| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{:<w$}", c, w = *w)).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&header);
    for r in &rows {
        line(&r.iter().map(String::as_str).collect::<Vec<_>>());
    }
    out
}
