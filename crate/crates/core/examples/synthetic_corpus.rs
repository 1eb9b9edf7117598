//! Generate seeded subtitle files, then ingest them back.

use srtchat::ingest::ingest;
use srtchat::store::load_corpus;
use srtchat::synth::{write_srt_dir, SynthConfig};
use srtchat::StopList;

fn main() -> srtchat::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let srt_dir = dir.path().join("srt");
    let cfg = SynthConfig {
        lines: 2500,
        vocab: 800,
        seed: 42,
        ..SynthConfig::default()
    };
    let generated = write_srt_dir(&cfg, &srt_dir)?;
    println!("generated {generated:?}");

    let first = std::fs::read_to_string(srt_dir.join("ep00001.srt")).expect("episode file");
    println!("--- ep00001.srt (head)");
    for line in first.lines().take(12) {
        println!("{line}");
    }

    let out = dir.path().join("corpus.jsonl");
    let summary = ingest(&srt_dir, &out, &StopList::default())?;
    println!("--- ingested {summary:?}");
    let corpus = load_corpus(&out, &StopList::default())?;
    for line in corpus.lines().iter().take(3) {
        println!("{:>4} ep{} {}", line.id, line.episode, line.text);
    }
    Ok(())
}
