//! Serve the chat API on a local port and talk to it.
//!
//! cargo run --example http_service -- --keep   keeps serving until Ctrl-C

use serde_json::{json, Value};
use srtchat::service::{router, serve, AppState, ChatService, RouterOptions};
use srtchat::store::save_corpus;
use srtchat::{Corpus, EngineConfig, StopList};

#[tokio::main]
async fn main() -> srtchat::Result<()> {
    let keep = std::env::args().any(|a| a == "--keep");
    let dir = tempfile::tempdir().expect("temp dir");
    let corpus_path = dir.path().join("corpus.jsonl");
    save_corpus(
        &Corpus::from_lines(&["hello there", "hi how are you"], &StopList::default())?,
        &corpus_path,
    )?;
    let cfg = EngineConfig::default();
    let app = router(
        AppState::ready(ChatService::open(&cfg, &corpus_path)?),
        &RouterOptions::default(),
    )?;
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0")
        .await
        .expect("bind");
    let base = format!("http://{}", listener.local_addr().expect("addr"));
    println!("serving on {base}");

    let (stop, stopped) = tokio::sync::oneshot::channel::<()>();
    let server = tokio::spawn(serve(listener, app, async move {
        let _ = stopped.await;
    }));

    let client = reqwest::Client::new();
    for (query, text) in [
        ("", "hello there"),
        ("?strategy=bow-l1", "hello there"),
        ("", "I am tired"),
    ] {
        let resp = client
            .post(format!("{base}/api/chat{query}"))
            .json(&json!({"session_id": "example", "text": text}))
            .send()
            .await
            .and_then(|r| r.error_for_status())
            .expect("chat request");
        let reply: Value = resp.json().await.expect("json");
        println!("POST /api/chat{query} {text:?}\n  {reply}");
    }
    let stats: Value = client
        .get(format!("{base}/api/stats"))
        .send()
        .await
        .expect("stats")
        .json()
        .await
        .expect("json");
    println!("GET /api/stats\n  {stats}");

    if keep {
        println!("Ctrl-C to stop");
        let _ = tokio::signal::ctrl_c().await;
    }
    let _ = stop.send(());
    server.await.expect("server task")
}
