//! Seeded synthetic dialogue for experiments at realistic corpus sizes.
//!
//! Lines are sentences over an invented vocabulary with a skewed word
//! frequency, sprinkled with short function words. The SRT writer adds noise
//! cues (sound effects, music, bracketed directions) and speaker labels that
//! the cleaner removes, so ingesting a generated directory yields exactly
//! `lines` corpus lines.

use std::collections::HashSet;
use std::path::Path;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::srt::SubtitleCue;

const ONSETS: &[&str] = &[
    "b", "br", "c", "ch", "d", "dr", "f", "fl", "g", "gr", "h", "j", "k", "l", "m", "n", "p", "pl",
    "qu", "r", "s", "sh", "st", "t", "th", "tr", "v", "w", "z",
];
const NUCLEI: &[&str] = &["a", "e", "i", "o", "u", "ai", "ea", "oo", "ou"];
const CODAS: &[&str] = &["", "", "", "n", "r", "s", "t", "ck", "nd", "ll", "m"];
const FUNCTION_WORDS: &[&str] = &[
    "a", "an", "on", "to", "is", "it", "the", "are", "of", "we", "you",
];
const SPEAKERS: &[&str] = &["ROSS", "RACHEL", "MONICA", "CHANDLER", "JOEY", "PHOEBE"];
const NOISE: &[&str] = &[
    "[door opens]",
    "(laughing)",
    "♪ theme music ♪",
    "[phone rings]",
    "(sighs)",
    "<i>[applause]</i>",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub lines: usize,
    pub vocab: usize,
    pub seed: u64,
    pub lines_per_episode: usize,
    /// Noise cues per hundred dialogue cues in written SRT files.
    pub noise_per_100: u32,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            lines: 1000,
            vocab: 2000,
            seed: 7,
            lines_per_episode: 400,
            noise_per_100: 5,
        }
    }
}

fn vocabulary(size: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut seen = HashSet::with_capacity(size);
    let mut words = Vec::with_capacity(size);
    while words.len() < size {
        let syllables = rng.random_range(1..=3);
        let mut w = String::new();
        for _ in 0..syllables {
            w.push_str(ONSETS.choose(rng).expect("non-empty"));
            w.push_str(NUCLEI.choose(rng).expect("non-empty"));
        }
        w.push_str(CODAS.choose(rng).expect("non-empty"));
        if w.len() >= 3 && seen.insert(w.clone()) {
            words.push(w);
        }
    }
    words
}

fn sentence(vocab: &[String], rng: &mut ChaCha8Rng) -> String {
    let len = rng.random_range(3..=11);
    let mut words: Vec<&str> = Vec::with_capacity(len);
    for _ in 0..len {
        if rng.random_bool(0.2) {
            words.push(FUNCTION_WORDS.choose(rng).expect("non-empty"));
        } else {
            // Skewed toward the front of the vocabulary.
            let u: f64 = rng.random();
            let i = ((u.powf(2.5)) * vocab.len() as f64) as usize;
            words.push(&vocab[i.min(vocab.len() - 1)]);
        }
    }
    let mut s = words.join(" ");
    if let Some(first) = s.get(..1) {
        let upper = first.to_uppercase();
        s.replace_range(..1, &upper);
    }
    s.push(*['.', '?', '!', '.'].choose(rng).expect("non-empty"));
    s
}

/// Dialogue lines grouped into episodes; `lines` in total.
pub fn generate_episodes(cfg: &SynthConfig) -> Result<Vec<Vec<String>>> {
    if cfg.lines == 0 || cfg.vocab == 0 || cfg.lines_per_episode == 0 {
        return Err(Error::Usage(
            "lines, vocab and lines per episode must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let vocab = vocabulary(cfg.vocab, &mut rng);
    let mut episodes = Vec::new();
    let mut remaining = cfg.lines;
    while remaining > 0 {
        let n = remaining.min(cfg.lines_per_episode);
        episodes.push((0..n).map(|_| sentence(&vocab, &mut rng)).collect());
        remaining -= n;
    }
    Ok(episodes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSummary {
    pub files: usize,
    pub lines: usize,
    pub noise_cues: usize,
}

/// Writes one `.srt` file per episode into `dir`.
pub fn write_srt_dir(cfg: &SynthConfig, dir: &Path) -> Result<GenSummary> {
    let episodes = generate_episodes(cfg)?;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5352_5400);
    let mut noise_cues = 0;
    for (e, lines) in episodes.iter().enumerate() {
        let mut out = String::new();
        let mut index = 1u32;
        let mut clock = 1_000u64;
        let mut cue = |text: Vec<String>, out: &mut String, clock: &mut u64| {
            let dur = 1_500 + (text.iter().map(String::len).sum::<usize>() as u64) * 40;
            let c = SubtitleCue {
                index,
                start: *clock,
                end: *clock + dur,
                lines: text,
            };
            out.push_str(&c.to_srt());
            index += index_step(index);
            *clock += dur + 250;
        };
        for line in lines {
            if rng.random_ratio(cfg.noise_per_100.min(100), 100) {
                let noise = NOISE.choose(&mut rng).expect("non-empty").to_string();
                cue(vec![noise], &mut out, &mut clock);
                noise_cues += 1;
            }
            let mut text = line.clone();
            if rng.random_bool(0.1) {
                text = format!("{}: {text}", SPEAKERS.choose(&mut rng).expect("non-empty"));
            }
            // Long lines wrap onto two payload lines, as subtitles do.
            let payload = match text.char_indices().filter(|&(_, c)| c == ' ').nth(5) {
                Some((at, _)) if rng.random_bool(0.5) => {
                    vec![text[..at].to_string(), text[at + 1..].to_string()]
                }
                _ => vec![text],
            };
            cue(payload, &mut out, &mut clock);
        }
        let path = dir.join(format!("ep{:05}.srt", e + 1));
        std::fs::write(&path, out).map_err(|e| Error::io(&path, e))?;
    }
    Ok(GenSummary {
        files: episodes.len(),
        lines: cfg.lines,
        noise_cues,
    })
}

// Real files skip index numbers now and then.
fn index_step(index: u32) -> u32 {
    if index.is_multiple_of(97) {
        2
    } else {
        1
    }
}

/// Queries drawn from `lines`: some verbatim, most with a word dropped,
/// replaced or the case changed.
pub fn generate_queries<S: AsRef<str>>(lines: &[S], count: usize, seed: u64) -> Vec<String> {
    if lines.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let base = lines[rng.random_range(0..lines.len())].as_ref();
            let mut words: Vec<String> = base.split_whitespace().map(str::to_string).collect();
            match rng.random_range(0..4) {
                0 => {}
                1 if words.len() > 2 => {
                    let i = rng.random_range(0..words.len());
                    words.remove(i);
                }
                2 => {
                    let donor = lines[rng.random_range(0..lines.len())].as_ref();
                    if let Some(w) = donor.split_whitespace().last() {
                        let i = rng.random_range(0..words.len());
                        words[i] = w.to_string();
                    }
                }
                _ => {
                    for w in &mut words {
                        *w = w.to_lowercase();
                    }
                }
            }
            words.join(" ")
        })
        .collect()
}
