//! One chat turn: knowledge questions first, then the nearest corpus or
//! learned prompt's reply, then the pronoun-swap fallback.

mod learn;
mod pronoun;
mod session;

use std::fmt;
use std::sync::{PoisonError, RwLock};

use serde::{Deserialize, Serialize};

pub use learn::{learn_from_turn, replay_transcript, LearnedPair};
pub use pronoun::{pronoun_swap, PronounTable};
pub use session::{Session, Speaker, TranscriptEntry};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::knowledge::{classify_query, lookup, FixtureProvider, KnowledgeProvider, QueryKind};
use crate::matcher::{EntrySource, MatchResult, Mode, SearchDomain, Searcher, Strategy};
use crate::text::StopList;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "corpus")]
    Corpus,
    #[serde(rename = "learned")]
    Learned,
    #[serde(rename = "knowledge")]
    Knowledge,
    #[serde(rename = "pronoun-swap")]
    PronounSwap,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Corpus => "corpus",
            Provenance::Learned => "learned",
            Provenance::Knowledge => "knowledge",
            Provenance::PronounSwap => "pronoun-swap",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `matched` is present exactly when provenance is corpus or learned.
#[derive(Debug, Clone, PartialEq)]
pub struct Reply {
    pub text: String,
    pub provenance: Provenance,
    pub matched: Option<MatchResult>,
    pub matched_line: Option<String>,
}

/// Default acceptance threshold per strategy. Levenshtein is compared after
/// dividing the distance by the longer string's length.
pub fn default_threshold(strategy: Strategy) -> f64 {
    match strategy {
        Strategy::Levenshtein => 0.5,
        Strategy::BowL1 | Strategy::BowL2 => 0.35,
    }
}

/// The score compared against the threshold: bag-of-words distances as-is,
/// Levenshtein distance over the longer string's length.
pub fn threshold_score(result: &MatchResult, query: &str, prompt: &str) -> f64 {
    match result.strategy {
        Strategy::Levenshtein => {
            let longest = query.chars().count().max(prompt.chars().count());
            if longest == 0 {
                0.0
            } else {
                result.score / longest as f64
            }
        }
        _ => result.score,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub strategy: Strategy,
    pub mode: Mode,
    /// `None` uses [`default_threshold`] for the active strategy.
    pub threshold: Option<f64>,
    pub workers: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            strategy: Strategy::Levenshtein,
            mode: Mode::Exhaustive,
            threshold: None,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub corpus_lines: usize,
    pub learned_pairs: usize,
    pub episodes: usize,
    pub strategy: Strategy,
}

/// Corpus prompt lines followed by learned prompts, learned ids assigned
/// after every corpus id in insertion order.
pub fn merged_search_domain(
    corpus: Option<&Corpus>,
    learned: &[LearnedPair],
    stoplist: &StopList,
) -> SearchDomain {
    let mut domain = match corpus {
        Some(c) => SearchDomain::from_corpus(c, stoplist.clone()),
        None => SearchDomain::empty(stoplist.clone()),
    };
    for pair in learned {
        domain.push_learned(&pair.prompt, &pair.response);
    }
    domain
}

#[derive(Debug, Clone)]
pub struct TurnOutcome {
    pub reply: Reply,
    /// The pair this turn taught the engine, already merged into retrieval.
    pub learned: Option<LearnedPair>,
}

pub struct ChatEngine {
    domain: RwLock<SearchDomain>,
    searcher: Searcher,
    provider: Box<dyn KnowledgeProvider>,
    pronouns: PronounTable,
    settings: Settings,
    corpus_lines: usize,
    episodes: usize,
    learned_pairs: RwLock<usize>,
}

impl fmt::Debug for ChatEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChatEngine")
            .field("settings", &self.settings)
            .field("corpus_lines", &self.corpus_lines)
            .finish_non_exhaustive()
    }
}

impl ChatEngine {
    pub fn new(corpus: &Corpus, stoplist: StopList, settings: Settings) -> Result<Self> {
        Ok(ChatEngine {
            domain: RwLock::new(SearchDomain::from_corpus(corpus, stoplist)),
            searcher: Searcher::new(settings.workers)?,
            provider: Box::new(FixtureProvider::default()),
            pronouns: PronounTable::default(),
            settings,
            corpus_lines: corpus.len(),
            episodes: corpus.episode_count(),
            learned_pairs: RwLock::new(0),
        })
    }

    pub fn with_provider(mut self, provider: impl KnowledgeProvider + 'static) -> Self {
        self.provider = Box::new(provider);
        self
    }

    pub fn with_pronouns(mut self, pronouns: PronounTable) -> Self {
        self.pronouns = pronouns;
        self
    }

    /// Merges previously persisted pairs, in order.
    pub fn with_learned(self, pairs: &[LearnedPair]) -> Self {
        for pair in pairs {
            self.add_learned(pair);
        }
        self
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub fn new_session(&self, session_id: impl Into<String>) -> Session {
        let mut s = Session::new(session_id, self.settings.strategy);
        s.threshold = self.settings.threshold;
        s
    }

    pub fn add_learned(&self, pair: &LearnedPair) {
        let mut domain = self.domain.write().unwrap_or_else(PoisonError::into_inner);
        let mut count = self
            .learned_pairs
            .write()
            .unwrap_or_else(PoisonError::into_inner);
        domain.push_learned(&pair.prompt, &pair.response);
        *count += 1;
    }

    pub fn stats(&self) -> Stats {
        Stats {
            corpus_lines: self.corpus_lines,
            learned_pairs: *self
                .learned_pairs
                .read()
                .unwrap_or_else(PoisonError::into_inner),
            episodes: self.episodes,
            strategy: self.settings.strategy,
        }
    }

    /// Answers `user_text` and records both sides in the transcript.
    pub fn respond(&self, session: &mut Session, user_text: &str) -> Result<Reply> {
        let user_text = validate(user_text)?;
        session.push(Speaker::User, user_text)?;
        let reply = self.route(session, user_text);
        session.push(Speaker::Bot, reply.text.clone())?;
        Ok(reply)
    }

    /// [`respond`](Self::respond), learning from the user's reply to the
    /// previous bot turn before answering it.
    pub fn turn(&self, session: &mut Session, user_text: &str) -> Result<TurnOutcome> {
        let user_text = validate(user_text)?;
        session.push(Speaker::User, user_text)?;
        let learned = learn_from_turn(session);
        if let Some(pair) = &learned {
            self.add_learned(pair);
        }
        let reply = self.route(session, user_text);
        session.push(Speaker::Bot, reply.text.clone())?;
        Ok(TurnOutcome { reply, learned })
    }

    fn route(&self, session: &Session, user_text: &str) -> Reply {
        if let q @ QueryKind::Known { .. } = classify_query(user_text) {
            if let Some(answer) = lookup(self.provider.as_ref(), &q) {
                return Reply {
                    text: answer,
                    provenance: Provenance::Knowledge,
                    matched: None,
                    matched_line: None,
                };
            }
        }

        let threshold = session
            .threshold
            .unwrap_or_else(|| default_threshold(session.strategy));
        let domain = self.domain.read().unwrap_or_else(PoisonError::into_inner);
        let query = domain.query(user_text);
        let found = self
            .searcher
            .best_match(&domain, &query, session.strategy, self.settings.mode);
        if let Some(m) = found {
            let entry = domain.get(m.line_id).expect("match id is in the domain");
            if threshold_score(&m, user_text, &entry.prompt) <= threshold {
                return Reply {
                    text: entry.reply.clone(),
                    provenance: match entry.source {
                        EntrySource::Corpus => Provenance::Corpus,
                        EntrySource::Learned => Provenance::Learned,
                    },
                    matched: Some(m),
                    matched_line: Some(entry.prompt.clone()),
                };
            }
        }

        Reply {
            text: self.pronouns.swap(user_text),
            provenance: Provenance::PronounSwap,
            matched: None,
            matched_line: None,
        }
    }
}

fn validate(text: &str) -> Result<&str> {
    let t = text.trim();
    if t.is_empty() {
        Err(Error::InvalidInput("empty_text".into()))
    } else {
        Ok(t)
    }
}
