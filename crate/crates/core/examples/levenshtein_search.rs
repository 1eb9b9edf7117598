//! Edit-distance search: the nearest prompt line and the reply that follows it.

use srtchat::matcher::{best_match, levenshtein, Mode, Strategy};
use srtchat::{Corpus, StopList};

fn main() -> srtchat::Result<()> {
    let sl = StopList::default();
    let corpus = Corpus::from_episodes(
        &[
            vec![
                "How you doin'?",
                "Fine, and you?",
                "Could this day BE any longer?",
                "It's only noon.",
            ],
            vec!["We were on a break!", "No, you weren't."],
        ],
        &sl,
    )?;

    println!("kitten/sitting: {}", levenshtein("kitten", "sitting"));
    for query in [
        "how you doing",
        "could this day be any longer",
        "we were on break",
    ] {
        let m = best_match(
            query,
            &corpus,
            &sl,
            Strategy::Levenshtein,
            Mode::Exhaustive,
            2,
        )?
        .expect("non-empty domain");
        let prompt = &corpus.line(m.line_id).unwrap().text;
        let reply = &corpus.reply(m.line_id).unwrap().text;
        println!(
            "{query:?}\n  nearest {prompt:?} (d={})\n  reply   {reply:?}",
            m.score
        );
    }
    Ok(())
}
