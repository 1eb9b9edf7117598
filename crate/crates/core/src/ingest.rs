//! Directory of `.srt` files → cleaned corpus snapshot.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{build_corpus, Corpus};
use crate::error::{Error, Result};
use crate::srt::{clean_cues, parse_srt};
use crate::store::save_corpus;
use crate::text::StopList;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestSummary {
    pub files: usize,
    pub cues: usize,
    pub kept_lines: usize,
    pub dropped_lines: usize,
}

/// `.srt` files directly inside `dir`, sorted by file name.
pub fn srt_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        let is_srt = path
            .extension()
            .is_some_and(|ext| ext.eq_ignore_ascii_case("srt"));
        if is_srt && path.is_file() {
            files.push(path);
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

/// Parses and cleans every `.srt` file in `dir` into a corpus.
pub fn load_srt_dir(dir: &Path, stoplist: &StopList) -> Result<(Corpus, IngestSummary)> {
    let files = srt_files(dir)?;
    if files.is_empty() {
        return Err(Error::Usage(format!("no .srt files in {}", dir.display())));
    }
    let parsed: Vec<(String, usize, Vec<String>)> = files
        .par_iter()
        .map(|path| {
            let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
            let raw = String::from_utf8_lossy(&bytes);
            let cues = parse_srt(&raw).map_err(|e| match e {
                Error::Parse { line, message } => Error::ParseFile {
                    path: path.clone(),
                    line,
                    message,
                },
                other => other,
            })?;
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok((name, cues.len(), clean_cues(&cues)))
        })
        .collect::<Result<_>>()?;

    let cues: usize = parsed.iter().map(|(_, n, _)| n).sum();
    let kept: usize = parsed.iter().map(|(_, _, u)| u.len()).sum();
    let named: Vec<(String, Vec<String>)> = parsed.into_iter().map(|(n, _, u)| (n, u)).collect();
    let corpus = build_corpus(&named, stoplist)?;
    let summary = IngestSummary {
        files: files.len(),
        cues,
        kept_lines: kept,
        dropped_lines: cues - kept,
    };
    Ok((corpus, summary))
}

/// Parse → clean → build → save. The output is byte-identical for the same
/// input directory.
pub fn ingest(dir: &Path, out: &Path, stoplist: &StopList) -> Result<IngestSummary> {
    let (corpus, summary) = load_srt_dir(dir, stoplist)?;
    save_corpus(&corpus, out)?;
    Ok(summary)
}
