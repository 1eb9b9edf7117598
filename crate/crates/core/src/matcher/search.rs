//! Nearest-prompt search over a [`SearchDomain`].
//!
//! The domain is partitioned into contiguous chunks of ascending ids; each
//! chunk keeps its own minimum and the minima are reduced by `(score, id)`.
//! Every entry's score is a pure function of the query and the entry, so the
//! result does not depend on the number of workers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bow::{disjoint_distance, normalized_distance};
use super::index::{candidate_lines, InvertedIndex};
use super::levenshtein::bounded;
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::text::{normalize, preprocess, Norm, StopList, TermVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "lev")]
    Levenshtein,
    #[serde(rename = "bow-l1")]
    BowL1,
    #[serde(rename = "bow-l2")]
    BowL2,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Levenshtein, Strategy::BowL1, Strategy::BowL2];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Levenshtein => "lev",
            Strategy::BowL1 => "bow-l1",
            Strategy::BowL2 => "bow-l2",
        }
    }

    pub fn norm(self) -> Option<Norm> {
        match self {
            Strategy::Levenshtein => None,
            Strategy::BowL1 => Some(Norm::L1),
            Strategy::BowL2 => Some(Norm::L2),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lev" => Ok(Strategy::Levenshtein),
            "bow-l1" => Ok(Strategy::BowL1),
            "bow-l2" => Ok(Strategy::BowL2),
            other => Err(Error::Config(format!(
                "unknown strategy {other:?} (expected lev, bow-l1 or bow-l2)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exhaustive,
    Indexed,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Indexed => "indexed",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "indexed" => Ok(Mode::Indexed),
            other => Err(Error::Config(format!(
                "unknown mode {other:?} (expected exhaustive or indexed)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    pub line_id: usize,
    pub score: f64,
    pub strategy: Strategy,
}

impl MatchResult {
    /// Exact equality, including the score's bit pattern.
    pub fn same_as(&self, other: &MatchResult) -> bool {
        self.line_id == other.line_id
            && self.score.to_bits() == other.score.to_bits()
            && self.strategy == other.strategy
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntrySource {
    Corpus,
    Learned,
}

/// One searchable prompt with the reply it leads to.
#[derive(Debug, Clone)]
pub struct SearchEntry {
    pub id: usize,
    pub prompt: String,
    pub reply: String,
    pub source: EntrySource,
    chars: Vec<char>,
    vector: TermVector,
    l1: TermVector,
    l2: TermVector,
}

impl SearchEntry {
    fn new(
        id: usize,
        prompt: String,
        reply: String,
        source: EntrySource,
        vector: TermVector,
    ) -> Self {
        SearchEntry {
            id,
            chars: lowercase_chars(&prompt),
            l1: normalize(&vector, Norm::L1),
            l2: normalize(&vector, Norm::L2),
            vector,
            prompt,
            reply,
            source,
        }
    }

    pub fn vector(&self) -> &TermVector {
        &self.vector
    }

    fn normalized(&self, norm: Norm) -> &TermVector {
        match norm {
            Norm::L1 => &self.l1,
            Norm::L2 => &self.l2,
        }
    }
}

fn lowercase_chars(text: &str) -> Vec<char> {
    text.chars().flat_map(char::to_lowercase).collect()
}

/// A query prepared once for every strategy.
#[derive(Debug, Clone)]
pub struct Query {
    pub text: String,
    chars: Vec<char>,
    vector: TermVector,
    l1: TermVector,
    l2: TermVector,
}

impl Query {
    pub fn new(text: &str, stoplist: &StopList) -> Self {
        let vector = preprocess(text, stoplist);
        Query {
            text: text.to_string(),
            chars: lowercase_chars(text),
            l1: normalize(&vector, Norm::L1),
            l2: normalize(&vector, Norm::L2),
            vector,
        }
    }

    pub fn vector(&self) -> &TermVector {
        &self.vector
    }

    fn normalized(&self, norm: Norm) -> &TermVector {
        match norm {
            Norm::L1 => &self.l1,
            Norm::L2 => &self.l2,
        }
    }
}

/// Corpus prompt lines (those with a successor) plus learned prompts, ids
/// ascending. Learned prompts take ids after every corpus id, so ties go to
/// the corpus.
#[derive(Debug, Clone)]
pub struct SearchDomain {
    entries: Vec<SearchEntry>,
    index: InvertedIndex,
    /// Ids of entries with an empty term vector. These sit at distance 1
    /// from any non-empty query yet share no token with it, so indexed
    /// search always scores them.
    empty_vector_ids: Vec<usize>,
    next_id: usize,
    stoplist: StopList,
}

impl SearchDomain {
    pub fn empty(stoplist: StopList) -> Self {
        SearchDomain {
            entries: Vec::new(),
            index: InvertedIndex::new(),
            empty_vector_ids: Vec::new(),
            next_id: 0,
            stoplist,
        }
    }

    pub fn from_corpus(corpus: &Corpus, stoplist: StopList) -> Self {
        let mut domain = SearchDomain::empty(stoplist);
        for id in corpus.prompt_ids() {
            let line = &corpus.lines()[id];
            let reply = corpus.lines()[id + 1].text.clone();
            domain.push_entry(SearchEntry::new(
                id,
                line.text.clone(),
                reply,
                EntrySource::Corpus,
                line.vector.clone(),
            ));
        }
        domain.next_id = corpus.len();
        domain
    }

    fn push_entry(&mut self, entry: SearchEntry) {
        debug_assert!(self.entries.last().is_none_or(|e| e.id < entry.id));
        self.index.insert(entry.id, &entry.vector);
        if entry.vector.is_empty() {
            self.empty_vector_ids.push(entry.id);
        }
        self.next_id = entry.id + 1;
        self.entries.push(entry);
    }

    /// Appends a learned prompt → reply pair and returns its id.
    pub fn push_learned(&mut self, prompt: &str, reply: &str) -> usize {
        let id = self.next_id;
        let vector = preprocess(prompt, &self.stoplist);
        self.push_entry(SearchEntry::new(
            id,
            prompt.to_string(),
            reply.to_string(),
            EntrySource::Learned,
            vector,
        ));
        id
    }

    pub fn query(&self, text: &str) -> Query {
        Query::new(text, &self.stoplist)
    }

    pub fn stoplist(&self) -> &StopList {
        &self.stoplist
    }

    pub fn entries(&self) -> &[SearchEntry] {
        &self.entries
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index(&self) -> &InvertedIndex {
        &self.index
    }

    pub fn get(&self, id: usize) -> Option<&SearchEntry> {
        self.position(id).map(|p| &self.entries[p])
    }

    fn position(&self, id: usize) -> Option<usize> {
        self.entries.binary_search_by_key(&id, |e| e.id).ok()
    }
}

/// Runs searches on a fixed number of workers.
pub struct Searcher {
    workers: usize,
    pool: Option<rayon::ThreadPool>,
}

impl fmt::Debug for Searcher {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Searcher")
            .field("workers", &self.workers)
            .finish()
    }
}

/// Chunks per worker; more than one evens out uneven Levenshtein pruning.
const CHUNKS_PER_WORKER: usize = 4;

type Best = (f64, usize);

fn better(a: Best, b: Best) -> Best {
    match a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)) {
        Ordering::Greater => b,
        _ => a,
    }
}

impl Searcher {
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        let pool = if workers > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .thread_name(|i| format!("search-{i}"))
                    .build()
                    .map_err(|e| Error::Config(format!("thread pool: {e}")))?,
            )
        } else {
            None
        };
        Ok(Searcher { workers, pool })
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// The entry nearest to `query`, ties to the smaller id, or `None` when
    /// the domain is empty.
    ///
    /// Indexed mode only applies to the bag-of-words strategies and returns
    /// exactly what exhaustive mode would.
    pub fn best_match(
        &self,
        domain: &SearchDomain,
        query: &Query,
        strategy: Strategy,
        mode: Mode,
    ) -> Option<MatchResult> {
        let best = match (mode, strategy.norm()) {
            (Mode::Indexed, Some(norm)) => self.indexed(domain, query, strategy, norm),
            _ => self.scan(domain, query, strategy, None),
        };
        best.map(|(score, line_id)| MatchResult {
            line_id,
            score,
            strategy,
        })
    }

    fn indexed(
        &self,
        domain: &SearchDomain,
        query: &Query,
        strategy: Strategy,
        norm: Norm,
    ) -> Option<Best> {
        let hits = candidate_lines(&domain.index, &query.vector);
        if hits.is_empty() {
            return self.scan(domain, query, strategy, None);
        }
        let mut ids = hits;
        ids.extend_from_slice(&domain.empty_vector_ids);
        ids.sort_unstable();
        let positions: Vec<usize> = ids
            .iter()
            .map(|&id| domain.position(id).expect("indexed id is in the domain"))
            .collect();
        let best = self.scan(domain, query, strategy, Some(&positions));
        // Every pruned entry sits at the disjoint distance. An overlapping
        // entry is strictly closer, but if the best found is within rounding
        // of that distance the pruned entries could tie, so rescan.
        match best {
            Some((score, _)) if score < disjoint_distance(norm) - 1e-9 => best,
            _ => self.scan(domain, query, strategy, None),
        }
    }

    /// Minimum over `positions` (or the whole domain).
    fn scan(
        &self,
        domain: &SearchDomain,
        query: &Query,
        strategy: Strategy,
        positions: Option<&[usize]>,
    ) -> Option<Best> {
        let total = positions.map_or(domain.entries.len(), <[usize]>::len);
        if total == 0 {
            return None;
        }
        let at = |k: usize| positions.map_or(k, |p| p[k]);
        let run = |range: std::ops::Range<usize>| -> Option<Best> {
            let entries = range.map(|k| &domain.entries[at(k)]);
            match strategy.norm() {
                None => scan_levenshtein(&query.chars, entries),
                Some(norm) => scan_bow(query.normalized(norm), norm, entries),
            }
        };

        match &self.pool {
            None => run(0..total),
            Some(pool) => {
                let chunks = (self.workers * CHUNKS_PER_WORKER).min(total);
                let size = total.div_ceil(chunks);
                pool.install(|| {
                    (0..chunks)
                        .into_par_iter()
                        .filter_map(|c| {
                            let start = c * size;
                            (start < total).then(|| run(start..(start + size).min(total)))?
                        })
                        .reduce_with(better)
                })
            }
        }
    }
}

fn scan_bow<'a>(
    query: &TermVector,
    norm: Norm,
    entries: impl Iterator<Item = &'a SearchEntry>,
) -> Option<Best> {
    entries
        .map(|e| (normalized_distance(query, e.normalized(norm), norm), e.id))
        .reduce(better)
}

fn scan_levenshtein<'a>(
    query: &[char],
    entries: impl Iterator<Item = &'a SearchEntry>,
) -> Option<Best> {
    let mut row = Vec::new();
    let mut best: Option<(usize, usize)> = None;
    for e in entries {
        let bound = best.map_or(usize::MAX, |(d, _)| d);
        if let Some(d) = bounded(query, &e.chars, bound, &mut row) {
            // Ascending ids: only a strictly smaller distance displaces.
            if best.is_none_or(|(b, _)| d < b) {
                best = Some((d, e.id));
            }
        }
    }
    best.map(|(d, id)| (d as f64, id))
}

/// One-shot search over a corpus's prompt lines.
pub fn best_match(
    query: &str,
    corpus: &Corpus,
    stoplist: &StopList,
    strategy: Strategy,
    mode: Mode,
    workers: usize,
) -> Result<Option<MatchResult>> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let domain = SearchDomain::from_corpus(corpus, stoplist.clone());
    let searcher = Searcher::new(workers)?;
    Ok(searcher.best_match(&domain, &domain.query(query), strategy, mode))
}
