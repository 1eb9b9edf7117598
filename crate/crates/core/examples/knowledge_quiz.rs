//! Quiz-style questions against a JSON fixture.

use srtchat::knowledge::{classify_query, lookup, FixtureProvider};

const FIXTURE: &str = r#"[
  {"kind": "who", "entity": "Sachin Tendulkar", "answer": "an Indian former international cricketer"},
  {"kind": "what", "entity": "DHCP", "answer": "a network management protocol"},
  {"kind": "when", "entity": "Independence Day", "answer": "15 August"}
]"#;

fn main() -> srtchat::Result<()> {
    let provider = FixtureProvider::from_json(FIXTURE)?;
    for q in [
        "Who is Sachin Tendulkar?",
        "what is dhcp",
        "When is Independence Day celebrated?",
        "Who is nobody famous?",
        "I want to know this.",
    ] {
        let kind = classify_query(q);
        let answer = lookup(&provider, &kind).unwrap_or_else(|| "(no answer)".into());
        println!("{q:<40} {:?} {:?} -> {answer}", kind.kind(), kind.entity());
    }
    Ok(())
}
