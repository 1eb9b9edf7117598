use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcher::Strategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Speaker {
    User,
    Bot,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub speaker: Speaker,
    pub text: String,
    pub timestamp: DateTime<Utc>,
}

/// One conversation. Turns alternate user, bot, user, ...
#[derive(Debug, Clone)]
pub struct Session {
    pub session_id: String,
    transcript: Vec<TranscriptEntry>,
    pub strategy: Strategy,
    /// `None` uses the engine's threshold for the current strategy.
    pub threshold: Option<f64>,
}

impl Session {
    pub fn new(session_id: impl Into<String>, strategy: Strategy) -> Self {
        Session {
            session_id: session_id.into(),
            transcript: Vec::new(),
            strategy,
            threshold: None,
        }
    }

    pub fn transcript(&self) -> &[TranscriptEntry] {
        &self.transcript
    }

    pub fn last_speaker(&self) -> Option<Speaker> {
        self.transcript.last().map(|e| e.speaker)
    }

    pub fn push(&mut self, speaker: Speaker, text: impl Into<String>) -> Result<&TranscriptEntry> {
        self.push_at(speaker, text, Utc::now())
    }

    pub fn push_at(
        &mut self,
        speaker: Speaker,
        text: impl Into<String>,
        timestamp: DateTime<Utc>,
    ) -> Result<&TranscriptEntry> {
        let expected = match self.last_speaker() {
            None | Some(Speaker::Bot) => Speaker::User,
            Some(Speaker::User) => Speaker::Bot,
        };
        if speaker != expected {
            return Err(Error::InvalidInput(format!(
                "transcript must alternate; expected a {expected:?} turn"
            )));
        }
        self.transcript.push(TranscriptEntry {
            speaker,
            text: text.into(),
            timestamp,
        });
        Ok(self.transcript.last().expect("just pushed"))
    }
}
