//! Inverted-index pruning for bag-of-words search, checked against a full scan.

use std::time::Instant;

use srtchat::matcher::{candidate_lines, Mode, SearchDomain, Searcher, Strategy};
use srtchat::synth::{generate_episodes, generate_queries, SynthConfig};
use srtchat::{Corpus, StopList};

fn main() -> srtchat::Result<()> {
    let cfg = SynthConfig {
        lines: 20_000,
        vocab: 3000,
        ..SynthConfig::default()
    };
    let episodes = generate_episodes(&cfg)?;
    let corpus = Corpus::from_episodes(&episodes, &StopList::default())?;
    let queries = generate_queries(&episodes.concat(), 50, 99);

    let domain = SearchDomain::from_corpus(&corpus, StopList::default());
    println!(
        "{} prompts, {} indexed tokens",
        domain.len(),
        domain.index().len()
    );
    let searcher = Searcher::new(4)?;

    for strategy in [Strategy::BowL1, Strategy::BowL2] {
        let mut candidates = 0;
        let mut timings = [0.0f64; 2];
        for q in &queries {
            let query = domain.query(q);
            candidates += candidate_lines(domain.index(), query.vector()).len();
            let mut results = Vec::new();
            for (slot, mode) in [Mode::Exhaustive, Mode::Indexed].into_iter().enumerate() {
                let t = Instant::now();
                results.push(
                    searcher
                        .best_match(&domain, &query, strategy, mode)
                        .unwrap(),
                );
                timings[slot] += t.elapsed().as_secs_f64() * 1000.0;
            }
            assert!(results[0].same_as(&results[1]));
        }
        let n = queries.len() as f64;
        println!(
            "{strategy}: mean {:.0} candidates/query, exhaustive {:.3} ms, indexed {:.3} ms, identical results",
            candidates as f64 / n,
            timings[0] / n,
            timings[1] / n
        );
    }
    Ok(())
}
