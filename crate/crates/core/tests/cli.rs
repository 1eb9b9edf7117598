use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use serde_json::Value;

use srtchat::engine::replay_transcript;
use srtchat::store::{load_learned, DocumentStore, JsonlStore, StorePaths};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_srtchat"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn seed_corpus(dir: &Path) -> String {
    let srt = dir.join("srt");
    std::fs::create_dir_all(&srt).unwrap();
    std::fs::write(
        srt.join("seed.srt"),
        "1\n00:00:01,000 --> 00:00:02,500\nhello there\n\n2\n00:00:02,600 --> 00:00:04,000\nhi how are you\n",
    )
    .unwrap();
    let corpus = dir.join("corpus.jsonl");
    let o = run(&[
        "ingest",
        srt.to_str().unwrap(),
        "--out",
        corpus.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    corpus.to_str().unwrap().to_string()
}

fn chat(corpus: &str, session: &str, input: &str) -> Output {
    let mut child = bin()
        .args(["--corpus", corpus, "chat", "--session", session])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn gen_then_ingest_is_exact_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let srt = dir.path().join("gen");
    let q = dir.path().join("q.txt");
    let o = run(&[
        "gen",
        "--lines",
        "1200",
        "--vocab",
        "300",
        "--seed",
        "5",
        "--out",
        srt.to_str().unwrap(),
        "--queries",
        q.to_str().unwrap(),
        "--query-count",
        "30",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&q).unwrap().lines().count(), 30);

    let out = dir.path().join("c.jsonl");
    let o = run(&[
        "ingest",
        srt.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["kept_lines"], 1200);
    let first = std::fs::read(&out).unwrap();
    run(&[
        "ingest",
        srt.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&out).unwrap(), first);
}

#[test]
fn ingest_errors_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["ingest", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));

    std::fs::write(
        dir.path().join("bad.srt"),
        "1\n00:00:01,000 -> 00:00:02,000\nHi\n\n",
    )
    .unwrap();
    let o = run(&[
        "ingest",
        dir.path().to_str().unwrap(),
        "--out",
        dir.path().join("c.jsonl").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.srt:2:"), "{}", stderr(&o));

    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["chat"]).status.code(), Some(2));
    assert_eq!(
        run(&["--corpus", "/definitely/missing.jsonl", "chat"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn chat_session_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = seed_corpus(dir.path());
    let o = chat(
        &corpus,
        "t1",
        "hello there\n\n   \nfine thanks\n/stats\n/quit\nnever read\n",
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "hi how are you  [corpus lev d=0]");
    assert!(lines[1].ends_with("[pronoun-swap]"), "{}", lines[1]);
    let stats: Value = serde_json::from_str(lines[2]).unwrap();
    assert_eq!(stats["learned_pairs"], 1);
    assert_eq!(lines.len(), 3);

    // Blank lines never reached the engine, and the transcript replays to
    // exactly the pairs that were learned.
    let store = JsonlStore::open(StorePaths::under(dir.path())).unwrap();
    let transcript = store.load_transcript("t1").unwrap();
    assert_eq!(transcript.len(), 4);
    let learned = load_learned(&dir.path().join("learned.jsonl"))
        .unwrap()
        .pairs;
    assert_eq!(replay_transcript("t1", &transcript), learned);

    // A later session gets the learned reply.
    let o = chat(&corpus, "t2", "hi how are you\n");
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "fine thanks  [learned lev d=0]"
    );
}

#[test]
fn bench_grid_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let srt = dir.path().join("gen");
    let q = dir.path().join("q.txt");
    let corpus = dir.path().join("c.jsonl");
    let json = dir.path().join("bench.json");
    run(&[
        "gen",
        "--lines",
        "1000",
        "--vocab",
        "400",
        "--out",
        srt.to_str().unwrap(),
        "--queries",
        q.to_str().unwrap(),
        "--query-count",
        "200",
    ]);
    run(&[
        "ingest",
        srt.to_str().unwrap(),
        "--out",
        corpus.to_str().unwrap(),
    ]);
    let o = run(&[
        "--corpus",
        corpus.to_str().unwrap(),
        "bench",
        "--queries",
        q.to_str().unwrap(),
        "--strategies",
        "lev,bow-l1",
        "--modes",
        "exhaustive",
        "--workers",
        "1,8",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["queries"] == 200));
    assert!(report["lev_vs_bow"]["bow-l1"].as_f64().unwrap() > 0.0);

    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let o = run(&[
        "--corpus",
        corpus.to_str().unwrap(),
        "bench",
        "--queries",
        empty.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

fn free_port() -> u16 {
    std::net::TcpListener::bind("127.0.0.1:0")
        .unwrap()
        .local_addr()
        .unwrap()
        .port()
}

#[test]
fn serve_on_occupied_port_fails() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = seed_corpus(dir.path());
    let taken = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let port = taken.local_addr().unwrap().port().to_string();
    let o = run(&["--corpus", &corpus, "serve", "--port", &port]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn sigint_drains_and_keeps_learned_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = seed_corpus(dir.path());
    let port = free_port();
    let mut child = bin()
        .args(["--corpus", &corpus, "serve", "--port", &port.to_string()])
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let base = format!("http://127.0.0.1:{port}");

    let rt = tokio::runtime::Builder::new_current_thread()
        .enable_all()
        .build()
        .unwrap();
    rt.block_on(async {
        let client = reqwest::Client::new();
        let deadline = Instant::now() + Duration::from_secs(20);
        loop {
            if let Ok(r) = client.get(format!("{base}/api/health")).send().await {
                if r.status() == reqwest::StatusCode::OK {
                    break;
                }
            }
            assert!(Instant::now() < deadline, "server never became healthy");
            tokio::time::sleep(Duration::from_millis(50)).await;
        }
        for text in ["hello there", "doing well"] {
            let r = client
                .post(format!("{base}/api/chat"))
                .json(&serde_json::json!({"session_id": "sig", "text": text}))
                .send()
                .await
                .unwrap();
            assert_eq!(r.status(), reqwest::StatusCode::OK);
        }
    });

    unsafe {
        libc::kill(child.id() as libc::pid_t, libc::SIGINT);
    }
    let status = child.wait().unwrap();
    assert!(status.success(), "{status:?}");
    let learned = load_learned(&dir.path().join("learned.jsonl")).unwrap();
    assert_eq!(learned.warnings, 0);
    assert_eq!(learned.pairs.len(), 1);
    assert_eq!(learned.pairs[0].response, "doing well");
}
