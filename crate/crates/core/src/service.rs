//! HTTP API over a [`ChatEngine`], plus the persistence wiring shared with
//! the terminal chat.
//!
//! | route            | method | body                               |
//! |------------------|--------|------------------------------------|
//! | `/api/chat`      | POST   | `{"session_id", "text"}` → reply   |
//! | `/api/stats`     | GET    | corpus and learned-pair counts     |
//! | `/api/health`    | GET    | `ok`, or 503 `loading` before boot |
//!
//! `POST /api/chat` accepts `?strategy=` and `?threshold=` to override the
//! engine defaults for that one turn.

use std::collections::HashMap;
use std::future::Future;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock, PoisonError};
use std::time::Instant;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Query, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

use crate::config::EngineConfig;
use crate::engine::{ChatEngine, Session, Stats, TurnOutcome};
use crate::error::{Error, Result};
use crate::matcher::Strategy;
use crate::store::{load_corpus, DocumentStore, JsonlStore, StorePaths};

/// A chat engine with optional persistence of what it learns.
pub struct ChatService {
    engine: ChatEngine,
    store: Option<Box<dyn DocumentStore>>,
}

impl std::fmt::Debug for ChatService {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChatService")
            .field("engine", &self.engine)
            .field("persistent", &self.store.is_some())
            .finish()
    }
}

/// Where learned pairs and transcripts go when the config does not say:
/// next to the corpus file.
pub fn store_paths(cfg: &EngineConfig, corpus_path: &Path) -> StorePaths {
    let dir = corpus_path.parent().unwrap_or(Path::new("."));
    let mut paths = StorePaths::under(dir);
    paths.corpus_path = corpus_path.to_path_buf();
    if let Some(p) = &cfg.learned_path {
        paths.learned_path = p.clone();
    }
    if let Some(p) = &cfg.sessions_dir {
        paths.sessions_dir = p.clone();
    }
    paths
}

impl ChatService {
    pub fn new(engine: ChatEngine, store: Option<Box<dyn DocumentStore>>) -> Self {
        ChatService { engine, store }
    }

    /// Loads the corpus, knowledge fixture, pronoun table and every learned
    /// pair already on disk.
    pub fn open(cfg: &EngineConfig, corpus_path: &Path) -> Result<Self> {
        let stoplist = cfg.stoplist()?;
        let corpus = load_corpus(corpus_path, &stoplist)?;
        let store = JsonlStore::open(store_paths(cfg, corpus_path))?;
        let loaded = store.load_learned()?;
        if loaded.warnings > 0 {
            tracing::warn!(
                skipped = loaded.warnings,
                "damaged learned-pair records skipped"
            );
        }
        let engine = ChatEngine::new(&corpus, stoplist, cfg.settings())?
            .with_provider(cfg.knowledge()?)
            .with_pronouns(cfg.pronouns()?)
            .with_learned(&loaded.pairs);
        tracing::info!(
            lines = corpus.len(),
            learned = loaded.pairs.len(),
            strategy = %cfg.strategy,
            "engine ready"
        );
        Ok(ChatService::new(engine, Some(Box::new(store))))
    }

    pub fn engine(&self) -> &ChatEngine {
        &self.engine
    }

    pub fn stats(&self) -> Stats {
        self.engine.stats()
    }

    /// A session, resumed from its stored transcript when there is one.
    pub fn session(&self, session_id: &str) -> Session {
        let mut session = self.engine.new_session(session_id);
        let Some(store) = &self.store else {
            return session;
        };
        match store.load_transcript(session_id) {
            Ok(entries) => {
                for e in entries {
                    if session.push_at(e.speaker, e.text, e.timestamp).is_err() {
                        tracing::warn!(
                            session_id,
                            "stored transcript out of order; starting fresh"
                        );
                        return self.engine.new_session(session_id);
                    }
                }
                session
            }
            Err(e) => {
                tracing::warn!(session_id, error = %e, "could not read transcript");
                session
            }
        }
    }

    /// One turn; the learned pair and both transcript entries are on disk
    /// before this returns.
    pub fn turn(&self, session: &mut Session, text: &str) -> Result<TurnOutcome> {
        let outcome = self.engine.turn(session, text)?;
        if let Some(store) = &self.store {
            if let Some(pair) = &outcome.learned {
                store.append_learned(pair)?;
            }
            let t = session.transcript();
            for entry in &t[t.len() - 2..] {
                store.append_transcript(&session.session_id, entry)?;
            }
        }
        Ok(outcome)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub session_id: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatResponse {
    pub reply: String,
    pub provenance: String,
    pub matched_line: Option<String>,
    pub score: Option<f64>,
    pub strategy: String,
    pub latency_ms: f64,
}

#[derive(Debug, Default, Deserialize)]
pub struct ChatParams {
    pub strategy: Option<String>,
    pub threshold: Option<String>,
}

struct Ready {
    service: ChatService,
    sessions: Mutex<HashMap<String, Arc<tokio::sync::Mutex<Session>>>>,
}

/// Shared handler state. Starts out loading; [`AppState::set_ready`] flips
/// it once the engine is built.
#[derive(Clone, Default)]
pub struct AppState {
    ready: Arc<OnceLock<Ready>>,
}

impl AppState {
    pub fn loading() -> Self {
        AppState::default()
    }

    pub fn ready(service: ChatService) -> Self {
        let state = AppState::default();
        state.set_ready(service);
        state
    }

    /// Returns false if the state was already ready.
    pub fn set_ready(&self, service: ChatService) -> bool {
        self.ready
            .set(Ready {
                service,
                sessions: Mutex::new(HashMap::new()),
            })
            .is_ok()
    }

    pub fn is_ready(&self) -> bool {
        self.ready.get().is_some()
    }
}

fn error(status: StatusCode, code: &str) -> Response {
    (status, Json(json!({ "error": code }))).into_response()
}

fn loading() -> Response {
    (
        StatusCode::SERVICE_UNAVAILABLE,
        Json(json!({ "status": "loading" })),
    )
        .into_response()
}

async fn health(State(state): State<AppState>) -> Response {
    if state.is_ready() {
        Json(json!({ "status": "ok" })).into_response()
    } else {
        loading()
    }
}

async fn stats(State(state): State<AppState>) -> Response {
    match state.ready.get() {
        Some(r) => Json(r.service.stats()).into_response(),
        None => loading(),
    }
}

async fn chat(
    State(state): State<AppState>,
    Query(params): Query<ChatParams>,
    body: std::result::Result<Json<ChatRequest>, JsonRejection>,
) -> Response {
    let started = Instant::now();
    let Json(req) = match body {
        Ok(b) => b,
        Err(e) => {
            tracing::debug!(error = %e, "rejected chat body");
            return error(StatusCode::BAD_REQUEST, "invalid_request");
        }
    };
    if req.text.trim().is_empty() {
        return error(StatusCode::BAD_REQUEST, "empty_text");
    }
    if req.session_id.trim().is_empty() {
        return error(StatusCode::BAD_REQUEST, "empty_session_id");
    }
    let strategy = match params
        .strategy
        .as_deref()
        .map(str::parse::<Strategy>)
        .transpose()
    {
        Ok(s) => s,
        Err(_) => return error(StatusCode::BAD_REQUEST, "invalid_strategy"),
    };
    let threshold = match params
        .threshold
        .as_deref()
        .map(str::parse::<f64>)
        .transpose()
    {
        Ok(Some(t)) if !(t.is_finite() && t >= 0.0) => {
            return error(StatusCode::BAD_REQUEST, "invalid_threshold")
        }
        Ok(t) => t,
        Err(_) => return error(StatusCode::BAD_REQUEST, "invalid_threshold"),
    };
    if state.ready.get().is_none() {
        return loading();
    }

    // Turns of one session queue on its lock in arrival order.
    let slot = {
        let ready = state.ready.get().expect("checked above");
        let mut sessions = ready
            .sessions
            .lock()
            .unwrap_or_else(PoisonError::into_inner);
        match sessions.get(&req.session_id) {
            Some(s) => s.clone(),
            None => {
                let s = Arc::new(tokio::sync::Mutex::new(
                    ready.service.session(&req.session_id),
                ));
                sessions.insert(req.session_id.clone(), s.clone());
                s
            }
        }
    };
    let mut session = slot.lock_owned().await;

    let worker_state = state.clone();
    let joined = tokio::task::spawn_blocking(move || {
        let ready = worker_state.ready.get().expect("ready before any turn");
        let defaults = ready.service.engine().settings();
        session.strategy = strategy.unwrap_or(defaults.strategy);
        session.threshold = threshold.or(defaults.threshold);
        let used = session.strategy;
        ready
            .service
            .turn(&mut session, &req.text)
            .map(|o| (o, used))
    })
    .await;

    match joined {
        Ok(Ok((outcome, used))) => {
            let reply = outcome.reply;
            Json(ChatResponse {
                reply: reply.text,
                provenance: reply.provenance.as_str().to_string(),
                matched_line: reply.matched_line,
                score: reply.matched.map(|m| m.score),
                strategy: used.as_str().to_string(),
                latency_ms: started.elapsed().as_secs_f64() * 1000.0,
            })
            .into_response()
        }
        Ok(Err(Error::InvalidInput(_))) => error(StatusCode::BAD_REQUEST, "empty_text"),
        Ok(Err(e)) => {
            tracing::error!(error = %e, "chat turn failed");
            error(StatusCode::INTERNAL_SERVER_ERROR, "internal")
        }
        Err(e) => {
            tracing::error!(error = %e, "chat worker panicked");
            error(StatusCode::INTERNAL_SERVER_ERROR, "internal")
        }
    }
}

const PLACEHOLDER: &str = "<!doctype html><title>srtchat</title>\
<p>The chat API is at <code>POST /api/chat</code>. No UI bundle is configured.</p>";

#[derive(Debug, Clone, Default)]
pub struct RouterOptions {
    /// Browser origin allowed to call the API.
    pub cors_origin: Option<String>,
    /// Static UI bundle served at `/`.
    pub ui_dir: Option<PathBuf>,
}

impl From<&EngineConfig> for RouterOptions {
    fn from(cfg: &EngineConfig) -> Self {
        RouterOptions {
            cors_origin: cfg.cors_origin.clone(),
            ui_dir: cfg.ui_dir.clone(),
        }
    }
}

pub fn router(state: AppState, opts: &RouterOptions) -> Result<Router> {
    let api = Router::new()
        .route("/api/chat", post(chat))
        .route("/api/stats", get(stats))
        .route("/api/health", get(health));
    let mut app = match &opts.ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(|| async { Html(PLACEHOLDER) })),
    };
    if let Some(origin) = &opts.cors_origin {
        let origin = HeaderValue::from_str(origin)
            .map_err(|_| Error::Config(format!("invalid cors origin {origin:?}")))?;
        app = app.layer(
            CorsLayer::new()
                .allow_origin(origin)
                .allow_methods([Method::GET, Method::POST])
                .allow_headers([header::CONTENT_TYPE]),
        );
    }
    Ok(app.with_state(state))
}

/// Serves until `shutdown` resolves, then finishes in-flight requests.
pub async fn serve(
    listener: tokio::net::TcpListener,
    app: Router,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> Result<()> {
    let addr = listener
        .local_addr()
        .map_err(|e| Error::io("listener", e))?;
    tracing::info!(%addr, "listening");
    axum::serve(listener, app)
        .with_graceful_shutdown(shutdown)
        .await
        .map_err(|e| Error::io(addr.to_string(), e))
}
