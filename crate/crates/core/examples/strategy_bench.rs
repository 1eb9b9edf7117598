//! Time every strategy on a synthetic corpus.
//!
//! cargo run --release --example strategy_bench [-- LINES]

use srtchat::bench::{format_table, run_bench, BenchSpec};
use srtchat::synth::{generate_episodes, generate_queries, SynthConfig};
use srtchat::{Corpus, StopList};

fn main() -> srtchat::Result<()> {
    let lines = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(10_000);
    let cfg = SynthConfig {
        lines,
        vocab: 5000,
        ..SynthConfig::default()
    };
    let episodes = generate_episodes(&cfg)?;
    let corpus = Corpus::from_episodes(&episodes, &StopList::default())?;
    let queries = generate_queries(&episodes.concat(), 100, 2);
    let spec = BenchSpec {
        workers: vec![1, 4],
        ..BenchSpec::default()
    };
    let report = run_bench(&corpus, &StopList::default(), &queries, &spec)?;
    print!("{}", format_table(&report));
    Ok(())
}
