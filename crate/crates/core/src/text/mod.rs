//! Utterance → term-vector pipeline: tokenize, filter, stem, count.

mod porter;
mod stoplist;
mod vector;

pub use porter::stem;
pub use stoplist::{StopList, DEFAULT_MIN_LENGTH, REQUIRED_WORDS};
pub use vector::{normalize, Norm, NormState, TermVector};

/// Lowercases and splits on every non-alphanumeric character.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Drops tokens shorter than the stop list's minimum length and tokens on
/// the list itself. Length is counted in characters.
pub fn filter_tokens(tokens: Vec<String>, stoplist: &StopList) -> Vec<String> {
    tokens
        .into_iter()
        .filter(|t| !stoplist.rejects(t))
        .collect()
}

/// Filters, then stems the survivors, then counts them into a raw-count
/// vector. Filtering runs before stemming, so stems are never re-filtered.
pub fn preprocess(text: &str, stoplist: &StopList) -> TermVector {
    let tokens = filter_tokens(tokenize(text), stoplist);
    TermVector::from_tokens(tokens.iter().map(|t| stem(t)))
}
