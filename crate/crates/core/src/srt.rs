//! SubRip (`.srt`) parsing and dialogue cleaning.
//!
//! A block is an index line, a `HH:MM:SS,mmm --> HH:MM:SS,mmm` timing line,
//! one or more payload lines and a blank-line terminator (end of input also
//! terminates the last block). Timing is validated and kept on the cue but
//! nothing downstream of [`clean_cues`] uses it.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtitleCue {
    pub index: u32,
    /// Milliseconds from zero.
    pub start: u64,
    pub end: u64,
    pub lines: Vec<String>,
}

impl SubtitleCue {
    /// Renders the cue back to SRT text, including the blank terminator.
    pub fn to_srt(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SubtitleCue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.index)?;
        writeln!(
            f,
            "{} --> {}",
            format_timestamp(self.start),
            format_timestamp(self.end)
        )?;
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        writeln!(f)
    }
}

pub fn format_timestamp(ms: u64) -> String {
    let h = ms / 3_600_000;
    let m = (ms / 60_000) % 60;
    let s = (ms / 1000) % 60;
    let milli = ms % 1000;
    format!("{h:02}:{m:02}:{s:02},{milli:03}")
}

fn parse_timestamp(raw: &str) -> Option<u64> {
    let (hms, milli) = raw.split_once(',')?;
    let mut parts = hms.split(':');
    let (h, m, s) = (parts.next()?, parts.next()?, parts.next()?);
    if parts.next().is_some() {
        return None;
    }
    let digits = |p: &str, len: Option<usize>| {
        !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()) && len.is_none_or(|l| p.len() == l)
    };
    if !(digits(h, None) && digits(m, Some(2)) && digits(s, Some(2)) && digits(milli, Some(3))) {
        return None;
    }
    let (h, m, s, milli): (u64, u64, u64, u64) = (
        h.parse().ok()?,
        m.parse().ok()?,
        s.parse().ok()?,
        milli.parse().ok()?,
    );
    if m >= 60 || s >= 60 {
        return None;
    }
    Some(((h * 60 + m) * 60 + s) * 1000 + milli)
}

fn parse_timing(line: &str, line_no: usize) -> Result<(u64, u64)> {
    let bad = |message: String| Error::Parse {
        line: line_no,
        message,
    };
    let (start, end) = line
        .split_once("-->")
        .ok_or_else(|| bad(format!("expected `start --> end`, got {line:?}")))?;
    let start = parse_timestamp(start.trim())
        .ok_or_else(|| bad(format!("malformed start timestamp {:?}", start.trim())))?;
    let end = parse_timestamp(end.trim())
        .ok_or_else(|| bad(format!("malformed end timestamp {:?}", end.trim())))?;
    if end < start {
        return Err(bad("cue ends before it starts".into()));
    }
    Ok((start, end))
}

/// Parses SRT text into cues in file order.
///
/// LF and CRLF endings are both accepted and a leading byte-order mark is
/// ignored. Index numbers must be positive but need not be consecutive. A block
/// whose timing line is followed directly by the terminator yields a cue with a
/// single empty payload line; [`clean_cues`] drops it.
pub fn parse_srt(raw: &str) -> Result<Vec<SubtitleCue>> {
    let raw = raw.strip_prefix('\u{feff}').unwrap_or(raw);
    let mut lines = raw
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .peekable();
    let mut cues = Vec::new();

    loop {
        // Blank separators between blocks.
        while lines.next_if(|(_, l)| l.trim().is_empty()).is_some() {}
        let Some((index_no, index_line)) = lines.next() else {
            break;
        };
        let index: u32 = index_line
            .trim()
            .parse()
            .ok()
            .filter(|&i| i > 0)
            .ok_or_else(|| Error::Parse {
                line: index_no,
                message: format!("expected a positive cue index, got {index_line:?}"),
            })?;

        let (timing_no, timing_line) = lines.next().ok_or_else(|| Error::Parse {
            line: index_no + 1,
            message: "missing timing line".into(),
        })?;
        let (start, end) = parse_timing(timing_line, timing_no)?;

        let mut payload = Vec::new();
        while let Some((_, l)) = lines.next_if(|(_, l)| !l.trim().is_empty()) {
            payload.push(l.to_string());
        }
        if payload.is_empty() {
            payload.push(String::new());
        }
        cues.push(SubtitleCue {
            index,
            start,
            end,
            lines: payload,
        });
    }
    Ok(cues)
}

/// Removes `<...>` and `{...}` markup. An unclosed opener is kept as text.
fn strip_tags(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(pos) = rest.find(['<', '{']) {
        let close = if rest.as_bytes()[pos] == b'<' {
            '>'
        } else {
            '}'
        };
        match rest[pos + 1..].find(close) {
            Some(len) => {
                out.push_str(&rest[..pos]);
                rest = &rest[pos + 1 + len + 1..];
            }
            None => break,
        }
    }
    out.push_str(rest);
    out
}

/// True when the whole string is one `[...]` or `(...)` group.
fn fully_enclosed(text: &str) -> bool {
    let (open, close) = match text.chars().next() {
        Some('[') => ('[', ']'),
        Some('(') => ('(', ')'),
        _ => return false,
    };
    let mut depth = 0usize;
    let last = text.chars().count() - 1;
    for (i, c) in text.chars().enumerate() {
        if c == open {
            depth += 1;
        } else if c == close {
            depth = depth.saturating_sub(1);
            if depth == 0 {
                return i == last;
            }
        }
    }
    false
}

/// Strips a leading `NAME:` label where NAME is a single all-uppercase token.
fn strip_speaker(text: &str) -> &str {
    let Some((label, rest)) = text.split_once(':') else {
        return text;
    };
    let mut chars = label.chars();
    let is_label = chars.next().is_some_and(char::is_uppercase)
        && chars.all(|c| c.is_uppercase() || c.is_ascii_digit() || matches!(c, '\'' | '-' | '_'));
    if is_label {
        rest.trim_start()
    } else {
        text
    }
}

fn is_noise(text: &str) -> bool {
    text.is_empty() || text.starts_with('♪') || fully_enclosed(text)
}

/// Cleans one cue into an utterance, or `None` if the cue is noise.
pub fn clean_cue(cue: &SubtitleCue) -> Option<String> {
    let joined = cue.lines.join(" ");
    let stripped = strip_tags(&joined);
    let collapsed = stripped.split_whitespace().collect::<Vec<_>>().join(" ");
    if is_noise(&collapsed) {
        return None;
    }
    let text = strip_speaker(&collapsed);
    if is_noise(text) {
        return None;
    }
    Some(text.to_string())
}

/// Turns cues into dialogue utterances, dropping blanks, sound cues, music
/// lines and stripping speaker labels. Never yields a blank string.
pub fn clean_cues(cues: &[SubtitleCue]) -> Vec<String> {
    cues.iter().filter_map(clean_cue).collect()
}
