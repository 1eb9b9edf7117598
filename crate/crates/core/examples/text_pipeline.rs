//! Tokenize, filter, stem and count an utterance, then compare two of them.

use srtchat::matcher::bow_distance;
use srtchat::text::{filter_tokens, normalize, preprocess, stem, tokenize, Norm, StopList};

fn main() {
    let sl = StopList::default();
    let text = "He picked the apples above us, then picks some more around the gathering.";

    let tokens = tokenize(text);
    println!("tokens:   {tokens:?}");
    let kept = filter_tokens(tokens, &sl);
    println!("filtered: {kept:?}");
    println!(
        "stems:    {:?}",
        kept.iter().map(|t| stem(t)).collect::<Vec<_>>()
    );

    let v = preprocess(text, &sl);
    println!("counts:   {:?}", v.iter().collect::<Vec<_>>());
    for norm in [Norm::L1, Norm::L2] {
        let n = normalize(&v, norm);
        println!(
            "{norm}:       {:?}",
            n.iter()
                .map(|(t, w)| format!("{t}={w:.3}"))
                .collect::<Vec<_>>()
        );
    }

    let other = preprocess("Pick an apple", &sl);
    for norm in [Norm::L1, Norm::L2] {
        println!(
            "distance ({norm}) to \"Pick an apple\": {:.4}",
            bow_distance(&v, &other, norm)
        );
    }
}
