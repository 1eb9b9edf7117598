use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};

const DEFAULT_TABLE: &str = include_str!("../../config/pronouns.txt");

/// Bidirectional word swap table. A word that is the right-hand side of
/// several pairs maps back to the left-hand side of the first one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PronounTable {
    map: HashMap<String, String>,
}

impl Default for PronounTable {
    fn default() -> Self {
        PronounTable::parse(DEFAULT_TABLE).expect("bundled pronoun table parses")
    }
}

impl PronounTable {
    /// Parses `left right` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let [left, right] = words[..] else {
                return Err(Error::Config(format!(
                    "pronoun table line {}: expected two words, got {line:?}",
                    n + 1
                )));
            };
            let (left, right) = (left.to_lowercase(), right.to_lowercase());
            map.entry(left.clone()).or_insert_with(|| right.clone());
            map.entry(right).or_insert(left);
        }
        Ok(PronounTable { map })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        PronounTable::parse(&text)
    }

    pub fn get(&self, word: &str) -> Option<&str> {
        self.map.get(word).map(String::as_str)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    /// Swaps every mapped word once, left to right, copying the replaced
    /// word's capitalization. Everything that is not a word is untouched.
    pub fn swap(&self, text: &str) -> String {
        let mut out = String::with_capacity(text.len() + 8);
        let mut sentence_start = true;
        let mut rest = text;
        while !rest.is_empty() {
            let word_len: usize = rest
                .chars()
                .take_while(|c| c.is_alphanumeric())
                .map(char::len_utf8)
                .sum();
            if word_len == 0 {
                let c = rest.chars().next().expect("non-empty");
                if matches!(c, '.' | '!' | '?') {
                    sentence_start = true;
                }
                out.push(c);
                rest = &rest[c.len_utf8()..];
                continue;
            }
            let (word, tail) = rest.split_at(word_len);
            match self.map.get(&word.to_lowercase()) {
                Some(target) => out.push_str(&match_case(word, target, sentence_start)),
                None => out.push_str(word),
            }
            sentence_start = false;
            rest = tail;
        }
        out
    }
}

fn match_case(source: &str, target: &str, sentence_start: bool) -> String {
    if target == "i" {
        return "I".into();
    }
    let mut chars = source.chars();
    let first_upper = chars.next().is_some_and(char::is_uppercase);
    let all_upper = source.chars().count() > 1 && source.chars().all(|c| !c.is_lowercase());
    // A lone "I" is capitalized by convention, not because it starts a
    // sentence, so it only counts as initial-cap at a sentence start.
    let initial_cap = first_upper && (source != "I" || sentence_start);
    if all_upper {
        target.to_uppercase()
    } else if initial_cap {
        let mut t = target.chars();
        t.next()
            .map(|c| c.to_uppercase().chain(t).collect())
            .unwrap_or_default()
    } else {
        target.to_string()
    }
}

/// The pronoun-swap baseline with the bundled table.
pub fn pronoun_swap(text: &str) -> String {
    PronounTable::default().swap(text)
}
