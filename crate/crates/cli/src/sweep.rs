//! Parallel sweep with an append-only resume journal.
//!
//! Work is split per embedding; the tuples of one embedding are examined in
//! parallel and merged in tuple order, so the output does not depend on the
//! worker count. Each finished embedding is appended to the journal as its
//! result lines followed by a completion line, in a single write.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use rayon::prelude::*;
use wflag_core::flag::FormatSpec;
use wflag_core::search::{plan_embeddings, Candidate, SearchConfig, Searcher};

use crate::record::{CompletionRecord, JournalLine, ResultRecord, SweepKey, SCHEMA_VERSION};

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    pub jobs: usize,
    pub resume: Option<PathBuf>,
    /// Print one line per embedding on stderr.
    pub progress: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    /// Sorted by weight sum, weights, basket; one per `(weights, basket)`.
    pub records: Vec<ResultRecord>,
    pub failures: Vec<(SweepKey, String)>,
    pub embeddings: usize,
    /// Embeddings taken from the journal instead of recomputed.
    pub resumed: usize,
    pub tuples: usize,
}

impl SweepReport {
    pub fn candidates(&self) -> anyhow::Result<Vec<Candidate>> {
        self.records.iter().map(|r| Candidate::try_from(&r.candidate)).collect()
    }
}

#[derive(Default)]
struct Journal {
    done: BTreeMap<SweepKey, CompletionRecord>,
    results: BTreeMap<SweepKey, Vec<ResultRecord>>,
}

fn read_journal(path: &Path) -> anyhow::Result<Journal> {
    let mut j = Journal::default();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(j),
        Err(e) => return Err(e).with_context(|| format!("opening {}", path.display())),
    };
    let lines: Vec<String> = BufReader::new(file).lines().collect::<Result<_, _>>()?;
    let last = lines.len().saturating_sub(1);
    for (i, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<JournalLine>(line) {
            Ok(JournalLine::Result(r)) => j.results.entry(r.sweep_key.clone()).or_default().push(*r),
            Ok(JournalLine::Completion(c)) => {
                j.done.insert(c.completed.clone(), c);
            }
            // a torn final line from an interrupted write
            Err(_) if i == last => {}
            Err(e) => anyhow::bail!("{}:{}: {}", path.display(), i + 1, e),
        }
    }
    for (key, rs) in j.results.iter_mut() {
        let mut seen = BTreeSet::new();
        rs.retain(|r| seen.insert(serde_json::to_string(&r.candidate).unwrap_or_default()));
        if let Some(c) = j.done.get(key) {
            rs.truncate(c.candidates);
        }
    }
    Ok(j)
}

fn append(path: &Path, records: &[ResultRecord], done: &CompletionRecord) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    for r in records {
        serde_json::to_writer(&mut buf, r)?;
        buf.push(b'\n');
    }
    serde_json::to_writer(&mut buf, done)?;
    buf.push(b'\n');
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    f.write_all(&buf)?;
    f.flush()?;
    Ok(())
}

/// Sorts and removes duplicate `(weights, basket)` pairs, as the library does.
pub fn finalize_records(records: Vec<ResultRecord>) -> anyhow::Result<Vec<ResultRecord>> {
    let mut pairs = records
        .into_iter()
        .map(|r| Candidate::try_from(&r.candidate).map(|c| (c, r)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    pairs.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()));
    pairs.dedup_by(|b, a| a.0.x_weights == b.0.x_weights && a.0.basket == b.0.basket);
    Ok(pairs.into_iter().map(|(_, r)| r).collect())
}

pub fn run_sweep(config: &SearchConfig, opts: &SweepOptions) -> anyhow::Result<SweepReport> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build()?;
    let journal = match &opts.resume {
        Some(p) => read_journal(p)?,
        None => Journal::default(),
    };
    let format = FormatSpec::new(config.format);
    let mut searcher = Searcher::for_config(config);
    let (plans, plan_failures) = plan_embeddings(config, &mut searcher.cache)?;

    let mut report = SweepReport {
        embeddings: plans.len() + plan_failures.len(),
        ..Default::default()
    };
    for f in plan_failures {
        report.failures.push((SweepKey::new(config, &f.param), f.error.to_string()));
    }
    let mut records = Vec::new();
    for plan in &plans {
        let key = SweepKey::new(config, &plan.embedding.param);
        if let Some(done) = journal.done.get(&key) {
            report.resumed += 1;
            report.tuples += done.tuples;
            match &done.error {
                Some(e) => report.failures.push((key.clone(), e.clone())),
                None => records.extend(journal.results.get(&key).cloned().unwrap_or_default()),
            }
            continue;
        }
        let start = Instant::now();
        let tuples = plan.tuples(config, &format);
        let found = pool.install(|| {
            tuples
                .par_iter()
                .map_init(|| Searcher::for_config(config), |s, t| s.examine(plan, t))
                .collect::<Result<Vec<_>, _>>()
        });
        let timing = start.elapsed().as_millis() as u64;
        report.tuples += tuples.len();
        let (new, error) = match found {
            Ok(f) => (
                f.into_iter()
                    .flatten()
                    .map(|c| ResultRecord::new(&c, timing, key.clone()))
                    .collect::<Vec<_>>(),
                None,
            ),
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        if opts.progress {
            eprintln!(
                "{}: {} tuples, {} candidates, {} ms{}",
                key,
                tuples.len(),
                new.len(),
                timing,
                error.as_ref().map(|e| format!(", failed: {}", e)).unwrap_or_default()
            );
        }
        if let Some(p) = &opts.resume {
            let done = CompletionRecord {
                schema_version: SCHEMA_VERSION,
                completed: key.clone(),
                candidates: new.len(),
                tuples: tuples.len(),
                timing,
                error: error.clone(),
            };
            append(p, &new, &done)?;
        }
        if let Some(e) = error {
            report.failures.push((key, e));
        }
        records.extend(new);
    }
    report.records = finalize_records(records)?;
    Ok(report)
}
