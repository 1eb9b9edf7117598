//! A short conversation showing every reply source.

use srtchat::engine::PronounTable;
use srtchat::knowledge::{FixtureProvider, Kind, KnowledgeEntry};
use srtchat::{ChatEngine, Corpus, Settings, StopList, Strategy};

fn main() -> srtchat::Result<()> {
    let corpus = Corpus::from_lines(
        &["hello there", "hi how are you", "not bad at all"],
        &StopList::default(),
    )?;
    let knowledge = FixtureProvider::new([KnowledgeEntry {
        kind: Kind::WhatIs,
        entity: "dhcp".into(),
        answer: "a network management protocol".into(),
    }]);
    let settings = Settings {
        strategy: Strategy::BowL1,
        ..Settings::default()
    };
    let engine = ChatEngine::new(&corpus, StopList::default(), settings)?
        .with_provider(knowledge)
        .with_pronouns(PronounTable::default());

    let mut session = engine.new_session("demo");
    for text in [
        "Hello there!",
        "What is DHCP?",
        "I want to know this.",
        "hi, how are you",
    ] {
        let reply = engine.respond(&mut session, text)?;
        let detail = match &reply.matched {
            Some(m) => format!(
                " via {:?} (d={:.3})",
                reply.matched_line.as_deref().unwrap_or(""),
                m.score
            ),
            None => String::new(),
        };
        println!(
            "user: {text}\nbot:  {}  [{}{detail}]",
            reply.text, reply.provenance
        );
    }
    println!("{} transcript entries", session.transcript().len());
    Ok(())
}
