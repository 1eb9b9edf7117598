//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::HashMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use srtchat::engine::{pronoun_swap, replay_transcript, ChatEngine, Provenance, Settings};
use srtchat::knowledge::{classify_query, Kind};
use srtchat::matcher::{levenshtein, Mode, SearchDomain, Searcher, Strategy};
use srtchat::service::ChatService;
use srtchat::store::{
    append_learned, corpus_to_string, load_corpus, load_learned, save_corpus, DocumentStore,
    JsonlStore, StorePaths,
};
use srtchat::synth::{generate_episodes, generate_queries, SynthConfig};
use srtchat::text::{filter_tokens, preprocess, tokenize, StopList};
use srtchat::{Corpus, EngineConfig, LearnedPair};

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce() -> Outcome>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn reference_levenshtein(
    a: &[char],
    b: &[char],
    memo: &mut HashMap<(usize, usize), usize>,
) -> usize {
    if a.is_empty() || b.is_empty() {
        return a.len() + b.len();
    }
    if let Some(&d) = memo.get(&(a.len(), b.len())) {
        return d;
    }
    let d = (reference_levenshtein(&a[1..], b, memo) + 1)
        .min(reference_levenshtein(a, &b[1..], memo) + 1)
        .min(reference_levenshtein(&a[1..], &b[1..], memo) + usize::from(a[0] != b[0]));
    memo.insert((a.len(), b.len()), d);
    d
}

fn levenshtein_oracle() -> Outcome {
    let started = Instant::now();
    let mut words = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..5 {
        frontier = frontier
            .iter()
            .flat_map(|s| [format!("{s}a"), format!("{s}b")])
            .collect();
        words.extend(frontier.iter().cloned());
    }
    let mut pairs = 0;
    let mut wrong = 0;
    for a in &words {
        for b in &words {
            let (ac, bc): (Vec<char>, Vec<char>) = (a.chars().collect(), b.chars().collect());
            if levenshtein(a, b) != reference_levenshtein(&ac, &bc, &mut HashMap::new()) {
                wrong += 1;
            }
            pairs += 1;
        }
    }
    let took = started.elapsed();
    check(pairs == 3969, format!("{pairs} pairs"))?;
    check(wrong == 0, format!("{wrong} of {pairs} differ"))?;
    check(
        took < Duration::from_secs(1),
        format!("took {}", secs(took)),
    )?;
    Ok(format!("{pairs}/{pairs} pairs exact in {}", secs(took)))
}

fn synthetic() -> (Corpus, Vec<String>) {
    let cfg = SynthConfig {
        lines: 1000,
        vocab: 500,
        seed: 11,
        ..SynthConfig::default()
    };
    let episodes = generate_episodes(&cfg).unwrap();
    let corpus = Corpus::from_episodes(&episodes, &StopList::default()).unwrap();
    let queries = generate_queries(&episodes.concat(), 200, 12);
    (corpus, queries)
}

fn index_equivalence() -> Outcome {
    let started = Instant::now();
    let (corpus, queries) = synthetic();
    let domain = SearchDomain::from_corpus(&corpus, StopList::default());
    let searcher = Searcher::new(1).unwrap();
    let mut summary = Vec::new();
    for s in [Strategy::BowL1, Strategy::BowL2] {
        let same = queries
            .iter()
            .filter(|q| {
                let query = domain.query(q);
                let a = searcher
                    .best_match(&domain, &query, s, Mode::Indexed)
                    .unwrap();
                let b = searcher
                    .best_match(&domain, &query, s, Mode::Exhaustive)
                    .unwrap();
                a.same_as(&b)
            })
            .count();
        check(
            same == queries.len(),
            format!("{s}: {same}/{} identical", queries.len()),
        )?;
        summary.push(format!("{s} {same}/{}", queries.len()));
    }
    let took = started.elapsed();
    check(
        took < Duration::from_secs(5),
        format!("took {}", secs(took)),
    )?;
    Ok(format!("{} in {}", summary.join(", "), secs(took)))
}

fn parallel_determinism() -> Outcome {
    let (corpus, queries) = synthetic();
    let domain = SearchDomain::from_corpus(&corpus, StopList::default());
    let searchers: Vec<Searcher> = [1, 2, 8]
        .iter()
        .map(|&w| Searcher::new(w).unwrap())
        .collect();
    let mut compared = 0;
    for s in Strategy::ALL {
        let modes: &[Mode] = if s.norm().is_some() {
            &[Mode::Exhaustive, Mode::Indexed]
        } else {
            &[Mode::Exhaustive]
        };
        for &mode in modes {
            for q in &queries {
                let query = domain.query(q);
                let base = searchers[0].best_match(&domain, &query, s, mode).unwrap();
                for searcher in &searchers[1..] {
                    let r = searcher.best_match(&domain, &query, s, mode).unwrap();
                    check(
                        r.same_as(&base),
                        format!("{s} {mode} workers={} differs on {q:?}", searcher.workers()),
                    )?;
                    compared += 1;
                }
            }
        }
    }
    Ok(format!(
        "{compared} comparisons bit-identical across workers 1, 2, 8"
    ))
}

fn worked_examples() -> Outcome {
    let swapped = pronoun_swap("I want to know this.");
    check(
        swapped == "You want to know this.",
        format!("pronoun swap gave {swapped:?}"),
    )?;

    let sl = StopList::default();
    let v = preprocess("pick picked picks", &sl);
    check(
        v.len() == 1 && v.get("pick") == Some(3.0),
        format!("stems: {:?}", v.tokens().collect::<Vec<_>>()),
    )?;

    let words = ["a", "an", "on", "above", "are", "the", "beneath", "around"];
    let kept = filter_tokens(words.iter().map(|w| w.to_string()).collect(), &sl);
    check(kept.is_empty(), format!("filter kept {kept:?}"))?;
    check(tokenize("A an ON").len() == 3, "tokenize")?;

    let quiz = [
        ("Who is Sachin Tendulkar?", Kind::WhoIs, "Sachin Tendulkar"),
        ("What is DHCP?", Kind::WhatIs, "DHCP"),
        (
            "When is Independence Day celebrated?",
            Kind::WhenIs,
            "Independence Day",
        ),
    ];
    for (text, kind, entity) in quiz {
        let q = classify_query(text);
        check(
            q.kind() == Some(kind) && q.entity() == entity,
            format!("{text:?} → {q:?}"),
        )?;
    }
    Ok("pronoun swap, stemming, filtering and 3 quiz classifications reproduce".into())
}

fn seed() -> Corpus {
    Corpus::from_lines(&["hello there", "hi how are you"], &StopList::default()).unwrap()
}

fn adjacency_contract() -> Outcome {
    for strategy in [Strategy::Levenshtein, Strategy::BowL1] {
        let settings = Settings {
            strategy,
            threshold: Some(0.0),
            ..Settings::default()
        };
        let engine = ChatEngine::new(&seed(), StopList::default(), settings).unwrap();
        let mut session = engine.new_session("adjacency");
        let r = engine.respond(&mut session, "hello there").unwrap();
        check(
            r.text == "hi how are you" && r.provenance == Provenance::Corpus,
            format!("{strategy}: {:?} [{}]", r.text, r.provenance),
        )?;
    }
    Ok("lev and bow-l1 both reply \"hi how are you\" [corpus] at threshold 0".into())
}

fn learning_loop(dir: &Path) -> Outcome {
    let corpus_path = dir.join("corpus.jsonl");
    save_corpus(&seed(), &corpus_path).map_err(|e| e.to_string())?;
    let cfg = EngineConfig {
        threshold: Some(0.0),
        ..EngineConfig::default()
    };
    let service = ChatService::open(&cfg, &corpus_path).map_err(|e| e.to_string())?;
    let mut session = service.session("teach");
    let mut bot_lines = Vec::new();
    for text in [
        "hello there",
        "pretty good, you?",
        "same as ever",
        "see you around",
    ] {
        let outcome = service
            .turn(&mut session, text)
            .map_err(|e| e.to_string())?;
        bot_lines.push(outcome.reply.text);
    }

    let store = JsonlStore::open(StorePaths::under(dir)).map_err(|e| e.to_string())?;
    let transcript = store.load_transcript("teach").map_err(|e| e.to_string())?;
    let qualifying = replay_transcript("teach", &transcript);
    let learned = load_learned(&dir.join("learned.jsonl")).map_err(|e| e.to_string())?;
    check(
        learned.pairs == qualifying,
        format!(
            "{} learned vs {} qualifying turns",
            learned.pairs.len(),
            qualifying.len()
        ),
    )?;
    check(
        qualifying.len() == 3,
        format!("{} qualifying turns", qualifying.len()),
    )?;

    // A fresh process and session asking exactly B gets U back.
    let fresh = ChatService::open(&cfg, &corpus_path).map_err(|e| e.to_string())?;
    let b = &bot_lines[0];
    let mut probe = fresh.session("probe");
    let r = fresh.turn(&mut probe, b).map_err(|e| e.to_string())?.reply;
    let m = r.matched.ok_or("no match")?;
    let ok = (r.provenance == Provenance::Learned && r.text == "pretty good, you?")
        || (r.provenance == Provenance::Corpus && m.score == 0.0);
    check(
        ok,
        format!("query {b:?} got {:?} [{}]", r.text, r.provenance),
    )?;
    Ok(format!(
        "{} pairs learned for {} qualifying turns; {b:?} → {:?} [{}]",
        learned.pairs.len(),
        qualifying.len(),
        r.text,
        r.provenance
    ))
}

fn run_bin(args: &[&str]) -> Result<String, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_srtchat"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr)));
    }
    Ok(String::from_utf8_lossy(&o.stdout).into_owned())
}

fn scale(dir: &Path) -> Outcome {
    let srt = dir.join("srt");
    let corpus = dir.join("corpus.jsonl");
    let queries = dir.join("queries.txt");
    let report_path = dir.join("bench.json");
    let p = |p: &Path| p.to_str().unwrap().to_string();

    let started = Instant::now();
    run_bin(&[
        "gen",
        "--lines",
        "75000",
        "--seed",
        "1",
        "--out",
        &p(&srt),
        "--queries",
        &p(&queries),
        "--query-count",
        "100",
    ])?;
    let summary: Value =
        serde_json::from_str(run_bin(&["ingest", &p(&srt), "--out", &p(&corpus)])?.trim())
            .map_err(|e| e.to_string())?;
    let ingest_time = started.elapsed();
    check(
        summary["kept_lines"] == 75000,
        format!("ingest kept {}", summary["kept_lines"]),
    )?;
    check(
        ingest_time < Duration::from_secs(60),
        format!("gen + ingest took {}", secs(ingest_time)),
    )?;

    let sl = StopList::default();
    let loaded = load_corpus(&corpus, &sl).map_err(|e| e.to_string())?;
    check(loaded.len() == 75000, "reloaded corpus size")?;
    check(
        corpus_to_string(&loaded).as_bytes()
            == std::fs::read(&corpus).map_err(|e| e.to_string())?,
        "75k corpus round trip not byte-stable",
    )?;

    run_bin(&[
        "--corpus",
        &p(&corpus),
        "bench",
        "--queries",
        &p(&queries),
        "--strategies",
        "lev,bow-l1",
        "--modes",
        "exhaustive,indexed",
        "--workers",
        "1",
        "--json",
        &p(&report_path),
    ])?;
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    let row = |s: &str, m: &str| {
        report["rows"]
            .as_array()
            .and_then(|rows| rows.iter().find(|r| r["strategy"] == s && r["mode"] == m))
            .cloned()
            .ok_or(format!("no {s} {m} row"))
    };
    let lev = row("lev", "exhaustive")?;
    let bow = row("bow-l1", "indexed")?;
    let lev_mean = lev["mean_ms"].as_f64().unwrap_or(f64::INFINITY);
    let bow_mean = bow["mean_ms"].as_f64().unwrap_or(f64::INFINITY);
    check(
        lev["queries"] == 100 && bow["queries"] == 100,
        "bench did not run 100 queries",
    )?;
    check(
        lev_mean <= 5000.0,
        format!("lev exhaustive mean {lev_mean:.1} ms"),
    )?;
    check(
        bow_mean <= 100.0,
        format!("bow-l1 indexed mean {bow_mean:.3} ms"),
    )?;
    let ratio = report["lev_vs_bow"]["bow-l1"]
        .as_f64()
        .ok_or("no lev-vs-bow ratio")?;
    Ok(format!(
        "gen+ingest {}; lev exhaustive {lev_mean:.2} ms/query, bow-l1 indexed {bow_mean:.3} ms/query, lev/bow-l1 {ratio:.1}x",
        secs(ingest_time)
    ))
}

fn store_robustness(dir: &Path) -> Outcome {
    let path = dir.join("learned.jsonl");
    for i in 0..3 {
        let pair = LearnedPair {
            prompt: format!("prompt {i}"),
            response: format!("response {i}"),
            session_id: "s".into(),
            created_at: chrono::Utc::now(),
        };
        append_learned(&pair, &path).map_err(|e| e.to_string())?;
    }
    let bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
    let last_start = bytes[..bytes.len() - 1]
        .iter()
        .rposition(|&b| b == b'\n')
        .unwrap()
        + 1;
    let cut = last_start + (bytes.len() - last_start) / 2;
    std::fs::write(&path, &bytes[..cut]).map_err(|e| e.to_string())?;
    let loaded = load_learned(&path).map_err(|e| e.to_string())?;
    check(
        loaded.pairs.len() == 2 && loaded.warnings == 1,
        format!("{} pairs, {} warnings", loaded.pairs.len(), loaded.warnings),
    )?;
    check(
        loaded.pairs[1].prompt == "prompt 1",
        "wrong surviving pairs",
    )?;

    let (corpus, _) = synthetic();
    let (a, b) = (dir.join("a.jsonl"), dir.join("b.jsonl"));
    save_corpus(&corpus, &a).map_err(|e| e.to_string())?;
    let reloaded = load_corpus(&a, &StopList::default()).map_err(|e| e.to_string())?;
    check(reloaded == corpus, "corpus changed in round trip")?;
    save_corpus(&reloaded, &b).map_err(|e| e.to_string())?;
    check(
        std::fs::read(&a).ok() == std::fs::read(&b).ok(),
        "saved corpus bytes differ",
    )?;
    Ok("truncated record skipped with 1 warning; corpus round trip byte-stable".into())
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let sub = |name: &str| {
        let p = dir.path().join(name);
        std::fs::create_dir_all(&p).expect("sub dir");
        p
    };
    let criteria: Vec<(&str, Criterion)> = vec![
        ("levenshtein oracle", Box::new(levenshtein_oracle)),
        ("index equivalence", Box::new(index_equivalence)),
        ("parallel determinism", Box::new(parallel_determinism)),
        ("worked examples", Box::new(worked_examples)),
        ("adjacency contract", Box::new(adjacency_contract)),
        (
            "learning loop",
            Box::new({
                let d = sub("learn");
                move || learning_loop(&d)
            }),
        ),
        (
            "scale 75k",
            Box::new({
                let d = sub("scale");
                move || scale(&d)
            }),
        ),
        (
            "store robustness",
            Box::new({
                let d = sub("store");
                move || store_robustness(&d)
            }),
        ),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
