//! Human replies to bot lines become new prompt/response pairs, on disk and
//! in retrieval.

use srtchat::service::ChatService;
use srtchat::store::{load_learned, save_corpus};
use srtchat::{Corpus, EngineConfig, StopList};

fn main() -> srtchat::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let corpus_path = dir.path().join("corpus.jsonl");
    save_corpus(
        &Corpus::from_lines(&["hello there", "hi how are you"], &StopList::default())?,
        &corpus_path,
    )?;
    let cfg = EngineConfig {
        threshold: Some(0.0),
        ..EngineConfig::default()
    };

    let service = ChatService::open(&cfg, &corpus_path)?;
    let mut alice = service.session("alice");
    for text in ["hello there", "great, just back from the beach"] {
        let out = service.turn(&mut alice, text)?;
        println!(
            "alice: {text}\nbot:   {}  [{}]",
            out.reply.text, out.reply.provenance
        );
        if let Some(pair) = out.learned {
            println!("       learned {:?} -> {:?}", pair.prompt, pair.response);
        }
    }

    // A new process loads the pair from disk.
    let restarted = ChatService::open(&cfg, &corpus_path)?;
    let mut bob = restarted.session("bob");
    let out = restarted.turn(&mut bob, "hi how are you")?;
    println!(
        "bob:   hi how are you\nbot:   {}  [{}]",
        out.reply.text, out.reply.provenance
    );
    println!(
        "{} pair(s) on disk",
        load_learned(&dir.path().join("learned.jsonl"))?.pairs.len()
    );
    Ok(())
}
