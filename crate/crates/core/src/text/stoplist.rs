use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};

const DEFAULT_WORDS: &str = include_str!("../../config/stopwords.txt");

/// Words that must be on every stop list, whatever the file says.
pub const REQUIRED_WORDS: [&str; 5] = ["above", "are", "the", "beneath", "around"];

pub const DEFAULT_MIN_LENGTH: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopList {
    words: HashSet<String>,
    min_length: usize,
}

impl Default for StopList {
    fn default() -> Self {
        StopList::parse(DEFAULT_WORDS, DEFAULT_MIN_LENGTH)
    }
}

impl StopList {
    /// Parses the one-word-per-line format; `#` starts a comment. The
    /// required words are always added.
    pub fn parse(text: &str, min_length: usize) -> Self {
        let mut words: HashSet<String> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::to_lowercase)
            .collect();
        words.extend(REQUIRED_WORDS.iter().map(|w| w.to_string()));
        StopList {
            words,
            min_length: min_length.max(1),
        }
    }

    pub fn load(path: &Path, min_length: usize) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(StopList::parse(&text, min_length))
    }

    pub fn min_length(&self) -> usize {
        self.min_length
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// True if `token` is too short or listed.
    pub fn rejects(&self, token: &str) -> bool {
        token.chars().count() < self.min_length || self.words.contains(token)
    }
}
