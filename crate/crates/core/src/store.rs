//! File-backed persistence: the corpus snapshot, learned pairs and session
//! transcripts, all JSON Lines.
//!
//! Corpus snapshot (`corpus-v1`): a header object
//! `{"format":"corpus-v1","episodes":[...]}` followed by one
//! `{"id":..,"episode":..,"text":..}` object per line. Learned pairs and
//! transcripts are append-only; a record cut short by a crash is skipped on
//! load and counted.

use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::engine::{LearnedPair, TranscriptEntry};
use crate::error::{Error, Result};
use crate::text::StopList;

pub const CORPUS_FORMAT: &str = "corpus-v1";

#[derive(Debug, Serialize, Deserialize)]
struct CorpusHeader {
    format: String,
    episodes: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CorpusRecord<'a> {
    id: usize,
    episode: usize,
    #[serde(borrow)]
    text: std::borrow::Cow<'a, str>,
}

fn write_corpus<W: Write>(corpus: &Corpus, mut w: W) -> Result<W> {
    let header = CorpusHeader {
        format: CORPUS_FORMAT.into(),
        episodes: corpus.episode_offsets().to_vec(),
    };
    serde_json::to_writer(&mut w, &header)?;
    w.write_all(b"\n").map_err(|e| Error::io("<corpus>", e))?;
    for line in corpus.lines() {
        let rec = CorpusRecord {
            id: line.id,
            episode: line.episode,
            text: line.text.as_str().into(),
        };
        serde_json::to_writer(&mut w, &rec)?;
        w.write_all(b"\n").map_err(|e| Error::io("<corpus>", e))?;
    }
    Ok(w)
}

/// Serializes a corpus snapshot. Identical corpora give identical bytes.
pub fn corpus_to_string(corpus: &Corpus) -> String {
    let bytes = write_corpus(corpus, Vec::new()).expect("writing to memory cannot fail");
    String::from_utf8(bytes).expect("serde_json writes UTF-8")
}

pub fn save_corpus(corpus: &Corpus, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = write_corpus(corpus, BufWriter::new(file))?;
    w.flush().map_err(|e| Error::io(path, e))?;
    w.get_ref().sync_all().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Parses a `corpus-v1` snapshot; term vectors are recomputed with `stoplist`.
pub fn corpus_from_str(text: &str, stoplist: &StopList) -> Result<Corpus> {
    let mut offset = 0u64;
    let mut records = text.split_inclusive('\n');
    let format_err = |offset: u64, message: String| Error::Format { offset, message };

    let header_line = records
        .next()
        .ok_or_else(|| format_err(0, "missing corpus header".into()))?;
    let header: CorpusHeader = serde_json::from_str(header_line.trim_end())
        .map_err(|e| format_err(0, format!("bad corpus header: {e}")))?;
    if header.format != CORPUS_FORMAT {
        return Err(format_err(
            0,
            format!(
                "unsupported format {:?}, expected {CORPUS_FORMAT}",
                header.format
            ),
        ));
    }
    offset += header_line.len() as u64;

    let mut episodes: Vec<Vec<String>> = vec![Vec::new(); header.episodes.len()];
    let mut next_id = 0usize;
    for raw in records {
        let line = raw.trim_end_matches(['\n', '\r']);
        if !line.trim().is_empty() {
            let rec: CorpusRecord<'_> = serde_json::from_str(line)
                .map_err(|e| format_err(offset, format!("bad corpus record: {e}")))?;
            if rec.id != next_id {
                return Err(format_err(
                    offset,
                    format!("expected line id {next_id}, found {}", rec.id),
                ));
            }
            let starts = header.episodes.get(rec.episode).copied();
            let ends = header
                .episodes
                .get(rec.episode + 1)
                .copied()
                .unwrap_or(usize::MAX);
            if !starts.is_some_and(|s| s <= rec.id && rec.id < ends) {
                return Err(format_err(
                    offset,
                    format!("line {} does not belong to episode {}", rec.id, rec.episode),
                ));
            }
            episodes[rec.episode].push(rec.text.into_owned());
            next_id += 1;
        }
        offset += raw.len() as u64;
    }

    let corpus = Corpus::from_episodes(&episodes, stoplist)?;
    if corpus.episode_offsets() != header.episodes.as_slice() {
        return Err(format_err(
            0,
            "episode offsets do not match the lines".into(),
        ));
    }
    Ok(corpus)
}

pub fn load_corpus(path: &Path, stoplist: &StopList) -> Result<Corpus> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    corpus_from_str(&text, stoplist)
}

/// Learned pairs read back from disk.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadedPairs {
    pub pairs: Vec<LearnedPair>,
    /// Records that could not be parsed and were skipped.
    pub warnings: usize,
}

/// Appends one JSON line. If a previous crash left the file without a
/// trailing newline, the damaged record is closed off first so the new one
/// stays readable. Existing bytes are never rewritten.
fn append_json_line<T: Serialize>(path: &Path, record: &T) -> Result<()> {
    let mut file = OpenOptions::new()
        .create(true)
        .read(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    let len = file.metadata().map_err(|e| Error::io(path, e))?.len();
    let mut buf = Vec::with_capacity(256);
    if len > 0 {
        let mut last = [0u8; 1];
        file.seek(SeekFrom::Start(len - 1))
            .and_then(|_| file.read_exact(&mut last))
            .map_err(|e| Error::io(path, e))?;
        if last[0] != b'\n' {
            buf.push(b'\n');
        }
    }
    serde_json::to_writer(&mut buf, record)?;
    buf.push(b'\n');
    file.write_all(&buf).map_err(|e| Error::io(path, e))?;
    file.sync_data().map_err(|e| Error::io(path, e))?;
    Ok(())
}

fn load_json_lines<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<(Vec<T>, usize)> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok((Vec::new(), 0)),
        Err(e) => return Err(Error::io(path, e)),
    };
    let mut records = Vec::new();
    let mut warnings = 0;
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(line) {
            Ok(r) => records.push(r),
            Err(e) => {
                tracing::warn!(path = %path.display(), line = n + 1, error = %e, "skipping damaged record");
                warnings += 1;
            }
        }
    }
    Ok((records, warnings))
}

pub fn append_learned(pair: &LearnedPair, path: &Path) -> Result<()> {
    if !pair.is_valid() {
        return Err(Error::InvalidInput("learned pair with blank text".into()));
    }
    append_json_line(path, pair)
}

/// Pairs in append order. A missing file is an empty store.
pub fn load_learned(path: &Path) -> Result<LoadedPairs> {
    let (pairs, warnings) = load_json_lines(path)?;
    Ok(LoadedPairs { pairs, warnings })
}

/// File name for a session's transcript. Characters outside
/// `[A-Za-z0-9_-]` are hex-escaped so distinct ids never collide.
pub fn transcript_file_name(session_id: &str) -> String {
    let mut name = String::with_capacity(session_id.len() + 6);
    for b in session_id.bytes() {
        if b.is_ascii_alphanumeric() || b == b'-' {
            name.push(b as char);
        } else {
            name.push_str(&format!("_{b:02x}"));
        }
    }
    name.push_str(".jsonl");
    name
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StorePaths {
    pub corpus_path: PathBuf,
    pub learned_path: PathBuf,
    pub sessions_dir: PathBuf,
}

impl StorePaths {
    /// The conventional layout under one data directory.
    pub fn under(dir: &Path) -> Self {
        StorePaths {
            corpus_path: dir.join("corpus.jsonl"),
            learned_path: dir.join("learned.jsonl"),
            sessions_dir: dir.join("sessions"),
        }
    }

    pub fn transcript_path(&self, session_id: &str) -> PathBuf {
        self.sessions_dir.join(transcript_file_name(session_id))
    }
}

/// Persistence for what the engine learns while running.
pub trait DocumentStore: Send + Sync {
    fn append_learned(&self, pair: &LearnedPair) -> Result<()>;
    fn load_learned(&self) -> Result<LoadedPairs>;
    fn append_transcript(&self, session_id: &str, entry: &TranscriptEntry) -> Result<()>;
    fn load_transcript(&self, session_id: &str) -> Result<Vec<TranscriptEntry>>;
}

/// JSONL files laid out by [`StorePaths`]. Writes go through one lock.
#[derive(Debug)]
pub struct JsonlStore {
    paths: StorePaths,
    writer: Mutex<()>,
}

impl JsonlStore {
    pub fn open(paths: StorePaths) -> Result<Self> {
        if let Some(parent) = paths.learned_path.parent() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        fs::create_dir_all(&paths.sessions_dir).map_err(|e| Error::io(&paths.sessions_dir, e))?;
        Ok(JsonlStore {
            paths,
            writer: Mutex::new(()),
        })
    }

    pub fn paths(&self) -> &StorePaths {
        &self.paths
    }
}

impl DocumentStore for JsonlStore {
    fn append_learned(&self, pair: &LearnedPair) -> Result<()> {
        let _guard = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        append_learned(pair, &self.paths.learned_path)
    }

    fn load_learned(&self) -> Result<LoadedPairs> {
        load_learned(&self.paths.learned_path)
    }

    fn append_transcript(&self, session_id: &str, entry: &TranscriptEntry) -> Result<()> {
        let _guard = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        append_json_line(&self.paths.transcript_path(session_id), entry)
    }

    fn load_transcript(&self, session_id: &str) -> Result<Vec<TranscriptEntry>> {
        Ok(load_json_lines(&self.paths.transcript_path(session_id))?.0)
    }
}
