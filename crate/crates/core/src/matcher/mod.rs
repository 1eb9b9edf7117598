//! Distances between utterances and nearest-prompt search.

mod bow;
mod index;
mod levenshtein;
mod search;

pub use bow::bow_distance;
pub use index::{build_index, candidate_lines, InvertedIndex};
pub use levenshtein::levenshtein;
pub use search::{
    best_match, EntrySource, MatchResult, Mode, Query, SearchDomain, SearchEntry, Searcher,
    Strategy,
};
