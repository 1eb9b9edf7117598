//! Parse an SRT file and clean it into dialogue lines.
//!
//! cargo run --example parse_clean [-- path/to/file.srt]

use srtchat::srt::{clean_cues, parse_srt};

const SAMPLE: &str = "\u{feff}1\r\n00:00:01,000 --> 00:00:02,500\r\n<i>Hello</i>\r\nthere.\r\n\r\n\
2\r\n00:00:03,000 --> 00:00:04,000\r\n[door opens]\r\n\r\n\
3\r\n00:00:04,100 --> 00:00:06,000\r\nMONICA: Hi! How are you?\r\n\r\n\
4\r\n00:00:06,500 --> 00:00:08,000\r\n♪ la la la ♪\r\n";

fn main() -> srtchat::Result<()> {
    let raw = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => SAMPLE.to_string(),
    };
    let cues = parse_srt(&raw)?;
    for cue in &cues {
        println!(
            "#{:<3} {:>7}..{:<7} {:?}",
            cue.index, cue.start, cue.end, cue.lines
        );
    }
    let lines = clean_cues(&cues);
    println!("\n{} cues, {} dialogue lines:", cues.len(), lines.len());
    for line in &lines {
        println!("  {line}");
    }

    match parse_srt("1\n00:00:01,000 -> 00:00:02,000\nHi\n") {
        Err(e) => println!("\nmalformed input: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
