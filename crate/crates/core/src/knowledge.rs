//! Template quiz questions ("who is", "what is", "when is") answered from a
//! pluggable provider.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "who")]
    WhoIs,
    #[serde(rename = "what")]
    WhatIs,
    #[serde(rename = "when")]
    WhenIs,
}

/// A classified query. The entity keeps the caller's casing for rendering;
/// lookups use its trimmed lowercase form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryKind {
    Known { kind: Kind, entity: String },
    None,
}

impl QueryKind {
    pub fn kind(&self) -> Option<Kind> {
        match self {
            QueryKind::Known { kind, .. } => Some(*kind),
            QueryKind::None => None,
        }
    }

    pub fn entity(&self) -> &str {
        match self {
            QueryKind::Known { entity, .. } => entity,
            QueryKind::None => "",
        }
    }
}

fn strip_prefix_ci<'a>(text: &'a str, prefix: &str) -> Option<&'a str> {
    let head = text.get(..prefix.len())?;
    head.eq_ignore_ascii_case(prefix)
        .then(|| &text[prefix.len()..])
}

fn strip_suffix_ci<'a>(text: &'a str, suffix: &str) -> Option<&'a str> {
    let cut = text.len().checked_sub(suffix.len())?;
    let tail = text.get(cut..)?;
    tail.eq_ignore_ascii_case(suffix).then(|| &text[..cut])
}

pub fn classify_query(text: &str) -> QueryKind {
    let text = text.trim();
    let patterns = [
        ("who is ", Kind::WhoIs),
        ("what is ", Kind::WhatIs),
        ("when is ", Kind::WhenIs),
    ];
    for (prefix, kind) in patterns {
        let Some(rest) = strip_prefix_ci(text, prefix) else {
            continue;
        };
        let mut entity = rest.trim_end_matches('?').trim();
        if kind == Kind::WhenIs {
            if let Some(e) = strip_suffix_ci(entity, " celebrated") {
                entity = e.trim_end();
            }
        }
        if entity.is_empty() {
            return QueryKind::None;
        }
        return QueryKind::Known {
            kind,
            entity: entity.to_string(),
        };
    }
    QueryKind::None
}

pub fn entity_key(entity: &str) -> String {
    entity.trim().to_lowercase()
}

/// Resolves `(kind, lowercase entity)` to a raw answer.
pub trait KnowledgeProvider: Send + Sync {
    fn answer(&self, kind: Kind, entity_key: &str) -> Option<String>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeEntry {
    pub kind: Kind,
    pub entity: String,
    pub answer: String,
}

/// Answers from a JSON array of [`KnowledgeEntry`] records loaded up front.
#[derive(Debug, Clone, Default)]
pub struct FixtureProvider {
    entries: HashMap<(Kind, String), String>,
}

impl FixtureProvider {
    pub fn new(entries: impl IntoIterator<Item = KnowledgeEntry>) -> Self {
        let entries = entries
            .into_iter()
            .map(|e| ((e.kind, entity_key(&e.entity)), e.answer))
            .collect();
        FixtureProvider { entries }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<KnowledgeEntry> = serde_json::from_str(text)?;
        Ok(FixtureProvider::new(entries))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        FixtureProvider::from_json(&text)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl KnowledgeProvider for FixtureProvider {
    fn answer(&self, kind: Kind, entity_key: &str) -> Option<String> {
        self.entries.get(&(kind, entity_key.to_string())).cloned()
    }
}

/// Renders the provider's answer into the kind's sentence template, or
/// `None` when the provider has nothing.
pub fn lookup(provider: &dyn KnowledgeProvider, query: &QueryKind) -> Option<String> {
    let QueryKind::Known { kind, entity } = query else {
        return None;
    };
    let answer = provider.answer(*kind, &entity_key(entity))?;
    Some(match kind {
        Kind::WhoIs | Kind::WhatIs => format!("{entity} is {answer}."),
        Kind::WhenIs => format!("{entity} is celebrated on {answer}."),
    })
}
