//! Command-line driver for `wflag-core`: embeddings, Hilbert data, orbifold
//! contributions, resumable candidate sweeps and the G2 Fano table.

pub mod emit;
pub mod record;
pub mod report;
pub mod settings;
pub mod sweep;

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use wflag_core::arith::{RationalFunction, UniPolynomial};
use wflag_core::flag::{
    ambient_weights, enumerate_parameters, hilbert_series, CocharacterParam, FormatKind, FormatSpec, ParamBound,
};
use wflag_core::orbifold::{initial_term, qorb, Basket, ContributionCache, QuotientSingularity};
use wflag_core::search::{Candidate, SearchConfig};

use emit::{weights_text, write_records, Emit};
use record::{JournalLine, ResultRecord};
use settings::{KernelRuleArg, Settings};
use sweep::{finalize_records, run_sweep, SweepOptions};

/// A malformed request that clap could not catch; exits with status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

/// The identity check of `decompose` failed; exits with status 1.
#[derive(Debug, thiserror::Error)]
#[error("identity fails: P - P_I - sum m_i P_Q = {0}")]
pub struct Mismatch(pub String);

#[derive(Debug, Parser)]
#[command(name = "wflag", version, about = "Orbifold candidates in weighted flag varieties")]
pub struct Cli {
    /// TOML file with default settings.
    #[arg(long, global = true, env = "WFLAG_CONFIG")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct EmbeddingArgs {
    #[arg(long)]
    pub format: FormatKind,
    /// Comma-separated cocharacter, e.g. `-1,1`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub mu: Vec<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub u: i64,
}

impl EmbeddingArgs {
    fn param(&self) -> CocharacterParam {
        CocharacterParam::new(self.mu.clone(), self.u)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ambient weights of an embedding.
    Weights(EmbeddingArgs),
    /// Hilbert numerator, adjunction number and canonical weight.
    Hilbert {
        #[command(flatten)]
        embedding: EmbeddingArgs,
        #[arg(long)]
        json: bool,
    },
    /// Orbifold contribution of one point `1/r(a_1,..,a_n)`.
    Qorb {
        #[arg(long)]
        r: u32,
        /// Comma-separated local weights.
        #[arg(long = "type", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Initial term of a series read from a file.
    Initial {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Checks `P = P_I + sum m_i P_Q` for a series and a basket read from files.
    Decompose {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        basket: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Distinct embeddings up to a bound.
    #[command(group(ArgGroup::new("bound").required(true).args(["u_max", "q_max"])))]
    Params {
        #[arg(long)]
        format: FormatKind,
        #[arg(long)]
        u_max: Option<i64>,
        /// Bound on the adjunction number; the only bound gr25 accepts.
        #[arg(long)]
        q_max: Option<i64>,
    },
    /// Candidate sweep.
    Search(SearchArgs),
    /// Regenerates a results table.
    Report {
        #[command(subcommand)]
        table: ReportTable,
    },
    /// Re-emits a results or journal file, optionally in another format.
    Inspect {
        input: PathBuf,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("bound").required(true).multiple(true).args(["u_max", "q_max"])))]
pub struct SearchArgs {
    #[arg(long)]
    pub format: FormatKind,
    #[arg(long, allow_hyphen_values = true)]
    pub k: i64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub u_min: i64,
    #[arg(long)]
    pub u_max: Option<i64>,
    #[arg(long)]
    pub q_max: Option<i64>,
    /// Keep only tuples reachable by low-degree cones and sections.
    #[arg(long)]
    pub strict_geometry: bool,
    #[arg(long, value_enum)]
    pub kernel_rule: Option<KernelRuleArg>,
    #[arg(long, env = "WFLAG_JOBS")]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Journal of finished embeddings; created if missing, skipped on rerun.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub emit: Option<Emit>,
    /// No per-embedding progress lines.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum ReportTable {
    /// The six G2 Fano rows from the `k = -1`, `n = 3`, `u <= 7` sweep.
    Table1 {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Read candidates from a results or journal file instead of sweeping.
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long, env = "WFLAG_JOBS")]
        jobs: Option<usize>,
    },
}

/// Exit status for an error returned by [`run`].
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<UsageError>().is_some() {
        2
    } else {
        1
    }
}

fn read_expression(path: &Path) -> anyhow::Result<String> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    Ok(lines.join(" "))
}

fn read_series(path: &Path) -> anyhow::Result<RationalFunction> {
    let text = read_expression(path)?;
    text.parse().with_context(|| format!("parsing the series in {}", path.display()))
}

fn read_basket(path: &Path) -> anyhow::Result<Basket> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let items: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().trim_end_matches(','))
        .filter(|l| !l.is_empty())
        .collect();
    items
        .join(", ")
        .parse()
        .with_context(|| format!("parsing the basket in {}", path.display()))
}

/// Reads result records from JSON lines; journal completion lines are skipped.
pub fn read_records(path: &Path) -> anyhow::Result<Vec<ResultRecord>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<JournalLine>(&line).with_context(|| format!("{}:{}", path.display(), i + 1))? {
            JournalLine::Result(r) => out.push(*r),
            JournalLine::Completion(_) => {}
        }
    }
    Ok(out)
}

fn open_out(path: Option<&Path>) -> anyhow::Result<Option<BufWriter<File>>> {
    path.map(|p| File::create(p).map(BufWriter::new).with_context(|| format!("creating {}", p.display())))
        .transpose()
}

fn factor_text(n: usize, r: u32) -> String {
    let one = if n == 1 { "(1 - t)".to_string() } else { format!("(1 - t)^{}", n) };
    format!("{} (1 - t^{})", one, r)
}

#[derive(Serialize)]
struct HilbertJson<'a> {
    format: &'a str,
    mu: &'a [i64],
    u: i64,
    weights: &'a [u32],
    numerator: &'a [i64],
    q: u32,
    canonical_weight: i64,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<()> {
    let settings = Settings::load(cli.config.as_deref())?;
    match cli.command {
        Command::Weights(e) => {
            let w = ambient_weights(&FormatSpec::new(e.format), &e.param())?;
            writeln!(out, "{}", weights_text(&w))?;
        }
        Command::Hilbert { embedding, json } => {
            let data = hilbert_series(&FormatSpec::new(embedding.format), &embedding.param())?;
            if json {
                let j = HilbertJson {
                    format: data.format.name(),
                    mu: &data.param.mu,
                    u: data.param.u,
                    weights: &data.ambient_weights,
                    numerator: &data.numerator_coeffs,
                    q: data.adjunction_q,
                    canonical_weight: data.canonical_weight,
                };
                serde_json::to_writer(&mut *out, &j)?;
                writeln!(out)?;
            } else {
                writeln!(out, "weights           {}", weights_text(&data.ambient_weights))?;
                writeln!(out, "H(t)              {}", data.numerator())?;
                writeln!(out, "q                 {}", data.adjunction_q)?;
                writeln!(out, "canonical weight  {}", data.canonical_weight)?;
            }
        }
        Command::Qorb { r, weights, k } => {
            let q = QuotientSingularity::new(r, &weights)?;
            let c = qorb(&q, k)?;
            let b = if c.shift == 0 {
                c.numerator_b.to_string()
            } else {
                format!("({}) / t^{}", c.numerator_b, c.shift)
            };
            writeln!(out, "type    {}", q)?;
            writeln!(out, "k       {}", k)?;
            writeln!(out, "B(t)    {}", b)?;
            writeln!(out, "P_Q(t)  ({}) / ({})", b, factor_text(q.dim(), r))?;
            writeln!(out, "reduced {}", c.value)?;
        }
        Command::Initial { series, n, k } => {
            let p = read_series(&series)?;
            let pi = initial_term(&p, n, k)?;
            let den = RationalFunction::from_poly(UniPolynomial::one_minus_t_pow(1).pow(n as u32 + 1));
            let a = &pi * &den;
            writeln!(out, "A(t)    {}", a.numerator())?;
            writeln!(out, "P_I(t)  ({}) / (1 - t)^{}", a.numerator(), n + 1)?;
        }
        Command::Decompose { series, basket, n, k } => {
            let p = read_series(&series)?;
            let basket = read_basket(&basket)?;
            for e in basket.entries() {
                if e.singularity.dim() != n {
                    return Err(UsageError(format!("{} is not a point of a {}-fold", e.singularity, n)).into());
                }
            }
            let pi = initial_term(&p, n, k)?;
            let orb = basket.contribution(k, &mut ContributionCache::new())?;
            writeln!(out, "P_I(t)    {}", pi)?;
            writeln!(out, "basket    {}", basket)?;
            writeln!(out, "sum P_Q   {}", orb)?;
            let residual = &(&p - &pi) - &orb;
            if !residual.is_zero() {
                return Err(Mismatch(residual.to_string()).into());
            }
            writeln!(out, "identity holds")?;
        }
        Command::Params { format, u_max, q_max } => {
            let spec = FormatSpec::new(format);
            let bound = match (u_max, q_max) {
                (_, Some(q)) => ParamBound::MaxQ(q),
                (Some(_), None) if format == FormatKind::Gr25 => {
                    return Err(UsageError("gr25 embeddings are bounded by --q-max, not --u-max".into()).into());
                }
                (Some(u), None) => ParamBound::MaxU(u),
                (None, None) => unreachable!("clap requires a bound"),
            };
            for (p, w) in enumerate_parameters(&spec, bound)? {
                writeln!(out, "{:<20} {}", format!("({})", p), weights_text(&w))?;
            }
        }
        Command::Search(args) => cmd_search(args, &settings, out)?,
        Command::Report { table } => match table {
            ReportTable::Table1 { out: path, from, jobs } => {
                let records = match from {
                    Some(f) => finalize_records(read_records(&f)?)?,
                    None => {
                        let opts = SweepOptions {
                            jobs: settings.jobs(jobs),
                            resume: None,
                            progress: settings.progress.unwrap_or(false),
                        };
                        run_sweep(&report::table1_config(), &opts)?.records
                    }
                };
                let candidates = records
                    .iter()
                    .map(|r| Candidate::try_from(&r.candidate))
                    .collect::<anyhow::Result<Vec<_>>>()?;
                let text = report::render_table1(&candidates);
                match open_out(path.as_deref())? {
                    Some(mut f) => f.write_all(text.as_bytes())?,
                    None => out.write_all(text.as_bytes())?,
                }
            }
        },
        Command::Inspect { input, emit } => {
            let records = finalize_records(read_records(&input)?)?;
            write_records(out, emit.or(settings.emit).unwrap_or_default(), &records)?;
        }
    }
    Ok(())
}

fn cmd_search(args: SearchArgs, settings: &Settings, out: &mut dyn Write) -> anyhow::Result<()> {
    let mut config = SearchConfig::new(args.format, args.k, args.n);
    match (args.format, args.u_max) {
        (FormatKind::Gr25, Some(_)) => {
            return Err(UsageError("gr25 sweeps are bounded by --q-max, not --u-max".into()).into());
        }
        (_, Some(hi)) => config = config.with_u_range(args.u_min, hi),
        (_, None) => {}
    }
    if let Some(q) = args.q_max {
        config = config.with_q_max(q);
    }
    config.strict_geometry = args.strict_geometry || settings.strict_geometry.unwrap_or(false);
    config.kernel_rule = args.kernel_rule.or(settings.kernel_rule).unwrap_or_default().into();
    config.jobs = settings.jobs(args.jobs);
    if let Err(e) = config.validate() {
        return Err(UsageError(e.to_string()).into());
    }
    let opts = SweepOptions {
        jobs: config.jobs,
        resume: args.resume,
        progress: !args.quiet && settings.progress.unwrap_or(true),
    };
    let report = run_sweep(&config, &opts)?;
    let emit = args.emit.or(settings.emit).unwrap_or_default();
    match open_out(args.out.as_deref())? {
        Some(mut f) => {
            write_records(&mut f, emit, &report.records)?;
            f.flush()?;
        }
        None => write_records(out, emit, &report.records)?,
    }
    for (key, e) in &report.failures {
        eprintln!("failed: {}: {}", key, e);
    }
    if !args.quiet {
        eprintln!(
            "{} embeddings ({} resumed), {} tuples, {} candidates, {} failures",
            report.embeddings,
            report.resumed,
            report.tuples,
            report.records.len(),
            report.failures.len()
        );
    }
    Ok(())
}
