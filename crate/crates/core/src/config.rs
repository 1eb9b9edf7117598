//! Engine config file (JSON). Every field is optional.
//!
//! ```json
//! {"strategy": "lev", "mode": "exhaustive", "threshold": 0.5, "workers": 4,
//!  "stoplist_path": "stopwords.txt", "pronoun_table_path": "pronouns.txt"}
//! ```
//!
//! Relative paths resolve against the config file's directory.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::engine::{PronounTable, Settings};
use crate::error::{Error, Result};
use crate::knowledge::FixtureProvider;
use crate::matcher::{Mode, Strategy};
use crate::text::{StopList, DEFAULT_MIN_LENGTH};

fn default_min_length() -> usize {
    DEFAULT_MIN_LENGTH
}

fn default_workers() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EngineConfig {
    pub strategy: Strategy,
    pub mode: Mode,
    pub threshold: Option<f64>,
    #[serde(default = "default_workers")]
    pub workers: usize,
    pub stoplist_path: Option<PathBuf>,
    pub pronoun_table_path: Option<PathBuf>,
    #[serde(default = "default_min_length")]
    pub min_length: usize,
    pub knowledge_path: Option<PathBuf>,
    pub learned_path: Option<PathBuf>,
    pub sessions_dir: Option<PathBuf>,
    /// Browser origin allowed by CORS, e.g. `http://localhost:5173`.
    pub cors_origin: Option<String>,
    /// Directory holding the chat UI bundle served at `/`.
    pub ui_dir: Option<PathBuf>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            strategy: Strategy::Levenshtein,
            mode: Mode::Exhaustive,
            threshold: None,
            workers: default_workers(),
            stoplist_path: None,
            pronoun_table_path: None,
            min_length: DEFAULT_MIN_LENGTH,
            knowledge_path: None,
            learned_path: None,
            sessions_dir: None,
            cors_origin: None,
            ui_dir: None,
        }
    }
}

impl EngineConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: EngineConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = EngineConfig::from_json(&text)?;
        if let Some(base) = path.parent() {
            cfg.resolve_paths(base);
        }
        Ok(cfg)
    }

    fn resolve_paths(&mut self, base: &Path) {
        for p in [
            &mut self.stoplist_path,
            &mut self.pronoun_table_path,
            &mut self.knowledge_path,
            &mut self.learned_path,
            &mut self.sessions_dir,
            &mut self.ui_dir,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.min_length == 0 {
            return Err(Error::Config("min_length must be at least 1".into()));
        }
        if let Some(t) = self.threshold {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::Config(format!(
                    "threshold must be a non-negative number, got {t}"
                )));
            }
        }
        Ok(())
    }

    pub fn settings(&self) -> Settings {
        Settings {
            strategy: self.strategy,
            mode: self.mode,
            threshold: self.threshold,
            workers: self.workers,
        }
    }

    pub fn stoplist(&self) -> Result<StopList> {
        match &self.stoplist_path {
            Some(p) => StopList::load(p, self.min_length),
            None if self.min_length == DEFAULT_MIN_LENGTH => Ok(StopList::default()),
            None => Ok(StopList::parse(
                include_str!("../config/stopwords.txt"),
                self.min_length,
            )),
        }
    }

    pub fn pronouns(&self) -> Result<PronounTable> {
        match &self.pronoun_table_path {
            Some(p) => PronounTable::load(p),
            None => Ok(PronounTable::default()),
        }
    }

    pub fn knowledge(&self) -> Result<FixtureProvider> {
        match &self.knowledge_path {
            Some(p) => FixtureProvider::load(p),
            None => Ok(FixtureProvider::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_fields() {
        let cfg = EngineConfig::from_json(
            r#"{"strategy":"bow-l2","mode":"indexed","threshold":0.2,"workers":4,
                "stoplist_path":"s.txt","pronoun_table_path":"p.txt","extra":1}"#,
        )
        .unwrap();
        assert_eq!(cfg.strategy, Strategy::BowL2);
        assert_eq!(cfg.mode, Mode::Indexed);
        assert_eq!(cfg.threshold, Some(0.2));
        assert_eq!(cfg.workers, 4);
        assert_eq!(cfg.min_length, 3);
    }

    #[test]
    fn empty_object_is_default() {
        assert_eq!(
            EngineConfig::from_json("{}").unwrap(),
            EngineConfig::default()
        );
    }

    #[test]
    fn rejects_bad_values() {
        assert!(EngineConfig::from_json(r#"{"workers":0}"#).is_err());
        assert!(EngineConfig::from_json(r#"{"threshold":-1}"#).is_err());
        assert!(EngineConfig::from_json(r#"{"strategy":"fuzzy"}"#).is_err());
    }

    #[test]
    fn relative_paths_follow_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("engine.json");
        std::fs::write(
            &path,
            r#"{"knowledge_path":"k.json","learned_path":"/abs/l.jsonl"}"#,
        )
        .unwrap();
        let cfg = EngineConfig::load(&path).unwrap();
        assert_eq!(cfg.knowledge_path.unwrap(), dir.path().join("k.json"));
        assert_eq!(cfg.learned_path.unwrap(), PathBuf::from("/abs/l.jsonl"));
    }
}
