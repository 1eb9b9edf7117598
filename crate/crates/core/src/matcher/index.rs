use std::collections::HashMap;

use crate::corpus::Corpus;
use crate::text::TermVector;

/// Stemmed token → ascending, duplicate-free line ids containing it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvertedIndex {
    postings: HashMap<String, Vec<usize>>,
}

impl InvertedIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Posts `id` under every token of `vector`.
    pub fn insert(&mut self, id: usize, vector: &TermVector) {
        for token in vector.tokens() {
            let list = self.postings.entry(token.to_string()).or_default();
            match list.last() {
                Some(&last) if last >= id => {
                    if let Err(pos) = list.binary_search(&id) {
                        list.insert(pos, id);
                    }
                }
                _ => list.push(id),
            }
        }
    }

    pub fn postings(&self, token: &str) -> Option<&[usize]> {
        self.postings.get(token).map(Vec::as_slice)
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.postings.keys().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.postings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.postings.len()
    }
}

/// Indexes every corpus line that has a successor reply.
pub fn build_index(corpus: &Corpus) -> InvertedIndex {
    let mut index = InvertedIndex::new();
    for id in corpus.prompt_ids() {
        index.insert(id, &corpus.lines()[id].vector);
    }
    index
}

/// Sorted union of the posting lists of the query's tokens.
pub fn candidate_lines(index: &InvertedIndex, query: &TermVector) -> Vec<usize> {
    let mut ids: Vec<usize> = query
        .tokens()
        .filter_map(|t| index.postings(t))
        .flatten()
        .copied()
        .collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}
