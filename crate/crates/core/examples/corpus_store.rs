//! Corpus snapshots and the learned-pair log, including crash recovery.

use chrono::Utc;
use srtchat::store::{append_learned, corpus_to_string, load_corpus, load_learned, save_corpus};
use srtchat::{Corpus, LearnedPair, StopList};

fn main() -> srtchat::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let sl = StopList::default();
    let corpus = Corpus::from_episodes(&[vec!["hi", "hello"], vec!["bye now"]], &sl)?;
    let path = dir.path().join("corpus.jsonl");
    save_corpus(&corpus, &path)?;
    print!("{}", corpus_to_string(&corpus));
    assert_eq!(load_corpus(&path, &sl)?, corpus);

    let log = dir.path().join("learned.jsonl");
    for i in 0..3 {
        append_learned(
            &LearnedPair {
                prompt: format!("prompt {i}"),
                response: format!("response {i}"),
                session_id: "demo".into(),
                created_at: Utc::now(),
            },
            &log,
        )?;
    }
    // Simulate a crash halfway through the last write.
    let bytes = std::fs::read(&log).expect("log");
    std::fs::write(&log, &bytes[..bytes.len() - 20]).expect("truncate");
    let loaded = load_learned(&log)?;
    println!(
        "\n{} pairs recovered, {} damaged record(s) skipped",
        loaded.pairs.len(),
        loaded.warnings
    );
    Ok(())
}
