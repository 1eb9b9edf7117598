//! A retrieval chatbot built from subtitle dialogue.
//!
//! Subtitle files are parsed and cleaned into an ordered corpus of lines. A
//! user utterance is matched against every line that has a successor in the
//! same episode, and the successor is the reply. Matching is either
//! character-level edit distance or a distance between normalized
//! term-frequency vectors, the latter optionally pruned by an inverted index.
//! Quiz-style questions are answered from a knowledge provider, anything too
//! far from the corpus gets a pronoun-swapped echo, and every human reply to
//! a bot line is learned as a new prompt/response pair.
//!
//! ```no_run
//! use srtchat::{Corpus, ChatEngine, Settings, StopList};
//!
//! let corpus = Corpus::from_lines(&["hello there", "hi how are you"], &StopList::default())?;
//! let engine = ChatEngine::new(&corpus, StopList::default(), Settings::default())?;
//! let mut session = engine.new_session("demo");
//! let reply = engine.respond(&mut session, "hello there")?;
//! assert_eq!(reply.text, "hi how are you");
//! # Ok::<(), srtchat::Error>(())
//! ```

pub mod bench;
pub mod config;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod ingest;
pub mod knowledge;
pub mod matcher;
pub mod service;
pub mod srt;
pub mod store;
pub mod synth;
pub mod text;

pub use config::EngineConfig;
pub use corpus::{build_corpus, Corpus, DialogueLine};
pub use engine::{ChatEngine, LearnedPair, Provenance, Reply, Session, Settings};
pub use error::{Error, Result};
pub use matcher::{MatchResult, Mode, Strategy};
pub use text::StopList;
