//! The ordered dialogue corpus and its adjacency structure.

use crate::error::{Error, Result};
use crate::text::{preprocess, StopList, TermVector};

#[derive(Debug, Clone, PartialEq)]
pub struct DialogueLine {
    pub id: usize,
    pub text: String,
    /// Index into [`Corpus::episode_offsets`].
    pub episode: usize,
    pub vector: TermVector,
}

/// Cleaned lines in corpus order. Line `L` is answered by `L + 1` when both
/// belong to the same episode.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    lines: Vec<DialogueLine>,
    episode_offsets: Vec<usize>,
}

impl Corpus {
    /// Assembles a corpus from per-episode utterance lists, in the given
    /// order. Lists with no utterances contribute no episode.
    pub fn from_episodes<S: AsRef<str>>(episodes: &[Vec<S>], stoplist: &StopList) -> Result<Self> {
        let mut lines = Vec::new();
        let mut episode_offsets = Vec::new();
        for utterances in episodes.iter().filter(|u| !u.is_empty()) {
            let episode = episode_offsets.len();
            episode_offsets.push(lines.len());
            for text in utterances {
                let text = text.as_ref().trim().to_string();
                if text.is_empty() {
                    return Err(Error::InvalidInput("blank corpus line".into()));
                }
                lines.push(DialogueLine {
                    id: lines.len(),
                    vector: preprocess(&text, stoplist),
                    text,
                    episode,
                });
            }
        }
        if lines.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        Ok(Corpus {
            lines,
            episode_offsets,
        })
    }

    /// Single-episode convenience constructor.
    pub fn from_lines<S: AsRef<str>>(lines: &[S], stoplist: &StopList) -> Result<Self> {
        let episode: Vec<&str> = lines.iter().map(AsRef::as_ref).collect();
        Corpus::from_episodes(&[episode], stoplist)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[DialogueLine] {
        &self.lines
    }

    pub fn line(&self, id: usize) -> Option<&DialogueLine> {
        self.lines.get(id)
    }

    pub fn episode_offsets(&self) -> &[usize] {
        &self.episode_offsets
    }

    pub fn episode_count(&self) -> usize {
        self.episode_offsets.len()
    }

    pub fn has_reply(&self, id: usize) -> bool {
        match (self.lines.get(id), self.lines.get(id + 1)) {
            (Some(a), Some(b)) => a.episode == b.episode,
            _ => false,
        }
    }

    pub fn reply(&self, id: usize) -> Option<&DialogueLine> {
        self.has_reply(id).then(|| &self.lines[id + 1])
    }

    /// Ids of lines that have a successor reply, ascending.
    pub fn prompt_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.lines.len()).filter(|&id| self.has_reply(id))
    }
}

/// Builds a corpus from `(filename, utterances)` pairs, ordering files by
/// filename so the result does not depend on directory listing order.
pub fn build_corpus<S: AsRef<str>>(
    files: &[(String, Vec<S>)],
    stoplist: &StopList,
) -> Result<Corpus> {
    let mut ordered: Vec<&(String, Vec<S>)> = files.iter().collect();
    ordered.sort_by(|a, b| a.0.cmp(&b.0));
    let episodes: Vec<Vec<&str>> = ordered
        .iter()
        .map(|(_, u)| u.iter().map(AsRef::as_ref).collect())
        .collect();
    Corpus::from_episodes(&episodes, stoplist)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn files(spec: &[(&str, &[&str])]) -> Vec<(String, Vec<String>)> {
        spec.iter()
            .map(|(n, u)| (n.to_string(), u.iter().map(|s| s.to_string()).collect()))
            .collect()
    }

    #[test]
    fn two_line_corpus() {
        let c = build_corpus(&files(&[("a.srt", &["hi", "hello"])]), &StopList::default()).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.episode_offsets(), &[0]);
        assert_eq!(c.reply(0).unwrap().text, "hello");
        assert!(c.reply(1).is_none());
    }

    #[test]
    fn episode_boundary_breaks_adjacency() {
        let c = build_corpus(
            &files(&[("b.srt", &["c"]), ("a.srt", &["a", "b"])]),
            &StopList::default(),
        )
        .unwrap();
        assert_eq!(c.episode_offsets(), &[0, 2]);
        assert_eq!(c.line(2).unwrap().text, "c");
        assert!(c.has_reply(0));
        assert!(!c.has_reply(1));
        assert!(!c.has_reply(2));
        assert_eq!(c.prompt_ids().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn empty_inputs() {
        let none: Vec<(String, Vec<String>)> = vec![];
        assert!(matches!(
            build_corpus(&none, &StopList::default()),
            Err(Error::EmptyCorpus)
        ));
        let blank = files(&[("a.srt", &[]), ("b.srt", &[])]);
        assert!(matches!(
            build_corpus(&blank, &StopList::default()),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn empty_file_contributes_no_episode() {
        let c = build_corpus(
            &files(&[("a.srt", &["x"]), ("b.srt", &[]), ("c.srt", &["y"])]),
            &StopList::default(),
        )
        .unwrap();
        assert_eq!(c.episode_offsets(), &[0, 1]);
        assert_eq!(c.line(1).unwrap().episode, 1);
    }
}
