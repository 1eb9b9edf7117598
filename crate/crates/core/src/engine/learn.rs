use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::session::{Session, Speaker, TranscriptEntry};

/// A bot utterance and the human reply that followed it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearnedPair {
    pub prompt: String,
    pub response: String,
    pub session_id: String,
    pub created_at: DateTime<Utc>,
}

impl LearnedPair {
    pub fn is_valid(&self) -> bool {
        !self.prompt.trim().is_empty() && !self.response.trim().is_empty()
    }
}

/// The pair ending at transcript position `at`, if that entry is a user
/// reply to a bot turn.
fn pair_at(session_id: &str, transcript: &[TranscriptEntry], at: usize) -> Option<LearnedPair> {
    if at < 2 {
        return None;
    }
    let (bot, user) = (&transcript[at - 1], &transcript[at]);
    if bot.speaker != Speaker::Bot || user.speaker != Speaker::User {
        return None;
    }
    let (prompt, response) = (bot.text.trim(), user.text.trim());
    if prompt.is_empty() || response.is_empty() || prompt == response {
        return None;
    }
    Some(LearnedPair {
        prompt: prompt.to_string(),
        response: response.to_string(),
        session_id: session_id.to_string(),
        created_at: user.timestamp,
    })
}

/// Learns from the latest turn when the transcript ends `..., bot B, user U`.
pub fn learn_from_turn(session: &Session) -> Option<LearnedPair> {
    let transcript = session.transcript();
    pair_at(
        &session.session_id,
        transcript,
        transcript.len().checked_sub(1)?,
    )
}

/// Every pair a live session would have learned, in order.
pub fn replay_transcript(session_id: &str, transcript: &[TranscriptEntry]) -> Vec<LearnedPair> {
    (0..transcript.len())
        .filter_map(|i| pair_at(session_id, transcript, i))
        .collect()
}
