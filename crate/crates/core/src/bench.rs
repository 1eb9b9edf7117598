//! Strategy timing harness.
//!
//! Before anything is timed, indexed and exhaustive search must agree on
//! every query for each bag-of-words strategy. After timing, every row of a
//! strategy must have produced the same results. Either failure returns
//! [`Error::Mismatch`] and no report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::matcher::{MatchResult, Mode, SearchDomain, Searcher, Strategy};
use crate::text::StopList;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchSpec {
    pub strategies: Vec<Strategy>,
    pub modes: Vec<Mode>,
    pub workers: Vec<usize>,
}

impl Default for BenchSpec {
    fn default() -> Self {
        BenchSpec {
            strategies: Strategy::ALL.to_vec(),
            modes: vec![Mode::Exhaustive, Mode::Indexed],
            workers: vec![1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub strategy: Strategy,
    pub mode: Mode,
    pub workers: usize,
    pub queries: usize,
    pub mean_ms: f64,
    pub p95_ms: f64,
    pub build_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub environment: String,
    /// Fastest Levenshtein mean over the fastest mean of each bag-of-words
    /// strategy, keyed by that strategy.
    pub lev_vs_bow: BTreeMap<String, f64>,
    /// Combinations not run, with the reason.
    pub skipped: Vec<String>,
}

/// One query per non-blank line.
pub fn read_queries(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let queries: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect();
    if queries.is_empty() {
        return Err(Error::Usage(format!("no queries in {}", path.display())));
    }
    Ok(queries)
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

/// Nearest-rank percentile of already sorted samples.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let rank = ((p / 100.0) * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

fn run_all(
    searcher: &Searcher,
    domain: &SearchDomain,
    queries: &[String],
    strategy: Strategy,
    mode: Mode,
) -> Vec<Option<MatchResult>> {
    queries
        .iter()
        .map(|q| searcher.best_match(domain, &domain.query(q), strategy, mode))
        .collect()
}

fn same(a: &Option<MatchResult>, b: &Option<MatchResult>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a.same_as(b),
        (None, None) => true,
        _ => false,
    }
}

fn show(r: &Option<MatchResult>) -> String {
    match r {
        Some(m) => format!("(line {}, score {:?})", m.line_id, m.score),
        None => "(no match)".into(),
    }
}

fn diff(
    label: &str,
    queries: &[String],
    a: &[Option<MatchResult>],
    b: &[Option<MatchResult>],
) -> Option<String> {
    let bad: Vec<usize> = (0..queries.len())
        .filter(|&i| !same(&a[i], &b[i]))
        .collect();
    if bad.is_empty() {
        return None;
    }
    let mut out = format!("{label}: {} of {} queries differ", bad.len(), queries.len());
    for &i in bad.iter().take(10) {
        let _ = write!(
            out,
            "\n  {:?}: {} vs {}",
            queries[i],
            show(&a[i]),
            show(&b[i])
        );
    }
    Some(out)
}

fn environment(corpus: &Corpus, domain: &SearchDomain) -> String {
    let cpus = std::thread::available_parallelism().map_or(1, |n| n.get());
    format!(
        "{} {}, {} cpus, {} corpus lines, {} searchable prompts, {} indexed tokens, {} build",
        std::env::consts::OS,
        std::env::consts::ARCH,
        cpus,
        corpus.len(),
        domain.len(),
        domain.index().len(),
        if cfg!(debug_assertions) {
            "debug"
        } else {
            "optimized"
        },
    )
}

pub fn run_bench(
    corpus: &Corpus,
    stoplist: &StopList,
    queries: &[String],
    spec: &BenchSpec,
) -> Result<BenchReport> {
    if queries.is_empty() {
        return Err(Error::Usage("no queries".into()));
    }
    if spec.strategies.is_empty() || spec.modes.is_empty() || spec.workers.is_empty() {
        return Err(Error::Usage("empty strategy, mode or worker list".into()));
    }
    let started = Instant::now();
    let domain = SearchDomain::from_corpus(corpus, stoplist.clone());
    let build_ms = ms(started);

    let single = Searcher::new(1)?;
    for &strategy in spec.strategies.iter().filter(|s| s.norm().is_some()) {
        let exhaustive = run_all(&single, &domain, queries, strategy, Mode::Exhaustive);
        let indexed = run_all(&single, &domain, queries, strategy, Mode::Indexed);
        if let Some(d) = diff(
            &format!("{strategy} indexed vs exhaustive"),
            queries,
            &indexed,
            &exhaustive,
        ) {
            return Err(Error::Mismatch(d));
        }
    }

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut reference: BTreeMap<&str, (String, Vec<Option<MatchResult>>)> = BTreeMap::new();
    for &strategy in &spec.strategies {
        for &mode in &spec.modes {
            if mode == Mode::Indexed && strategy.norm().is_none() {
                skipped.push(format!(
                    "{strategy} {mode}: the index only serves bag-of-words strategies"
                ));
                continue;
            }
            for &workers in &spec.workers {
                let searcher = Searcher::new(workers)?;
                let mut samples = Vec::with_capacity(queries.len());
                let mut results = Vec::with_capacity(queries.len());
                for q in queries {
                    let t = Instant::now();
                    let r = searcher.best_match(&domain, &domain.query(q), strategy, mode);
                    samples.push(ms(t));
                    results.push(r);
                }
                let label = format!("{strategy} {mode} workers={workers}");
                match reference.get(strategy.as_str()) {
                    Some((first, expected)) => {
                        if let Some(d) =
                            diff(&format!("{label} vs {first}"), queries, &results, expected)
                        {
                            return Err(Error::Mismatch(d));
                        }
                    }
                    None => {
                        reference.insert(strategy.as_str(), (label, results));
                    }
                }
                let mean_ms = samples.iter().sum::<f64>() / samples.len() as f64;
                samples.sort_by(f64::total_cmp);
                rows.push(BenchRow {
                    strategy,
                    mode,
                    workers,
                    queries: queries.len(),
                    mean_ms,
                    p95_ms: percentile(&samples, 95.0),
                    build_ms,
                });
            }
        }
    }

    let fastest = |s: Strategy| {
        rows.iter()
            .filter(|r| r.strategy == s)
            .map(|r| r.mean_ms)
            .min_by(f64::total_cmp)
    };
    let mut lev_vs_bow = BTreeMap::new();
    if let Some(lev) = fastest(Strategy::Levenshtein) {
        for s in [Strategy::BowL1, Strategy::BowL2] {
            if let Some(bow) = fastest(s) {
                lev_vs_bow.insert(s.as_str().to_string(), lev / bow.max(f64::MIN_POSITIVE));
            }
        }
    }

    Ok(BenchReport {
        rows,
        environment: environment(corpus, &domain),
        lev_vs_bow,
        skipped,
    })
}

pub fn format_table(report: &BenchReport) -> String {
    let mut out = format!(
        "{:<8} {:<10} {:>7} {:>7} {:>12} {:>12} {:>10}\n",
        "strategy", "mode", "workers", "queries", "mean_ms", "p95_ms", "build_ms"
    );
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{:<8} {:<10} {:>7} {:>7} {:>12.3} {:>12.3} {:>10.1}",
            r.strategy.as_str(),
            r.mode.as_str(),
            r.workers,
            r.queries,
            r.mean_ms,
            r.p95_ms,
            r.build_ms
        );
    }
    for (bow, ratio) in &report.lev_vs_bow {
        let _ = writeln!(out, "lev / {bow} mean: {ratio:.1}x");
    }
    for s in &report.skipped {
        let _ = writeln!(out, "skipped {s}");
    }
    let _ = writeln!(out, "{}", report.environment);
    out
}
