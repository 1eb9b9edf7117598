use std::io::{BufRead, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use srtchat::bench::{format_table, read_queries, run_bench, BenchSpec};
use srtchat::ingest::ingest;
use srtchat::service::{router, serve, AppState, ChatService, RouterOptions};
use srtchat::store::load_corpus;
use srtchat::synth::{generate_episodes, generate_queries, write_srt_dir, SynthConfig};
use srtchat::{EngineConfig, Error, Mode, Provenance, Reply, Strategy};

#[derive(Parser)]
#[command(
    name = "srtchat",
    version,
    about = "Retrieval chatbot over subtitle dialogue"
)]
struct Cli {
    /// Engine config file (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Corpus snapshot (corpus-v1 JSONL).
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and clean a directory of .srt files into a corpus snapshot.
    Ingest {
        dir: PathBuf,
        /// Output path; defaults to --corpus, then corpus.jsonl.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chat in the terminal. `/stats` prints counts, `/quit` exits.
    Chat {
        #[arg(long)]
        session: Option<String>,
    },
    /// Time every strategy/mode/workers combination over a query file.
    Bench {
        /// One query per line.
        #[arg(long)]
        queries: PathBuf,
        #[arg(long, value_delimiter = ',', default_values = ["lev", "bow-l1", "bow-l2"])]
        strategies: Vec<Strategy>,
        #[arg(long, value_delimiter = ',', default_values = ["exhaustive", "indexed"])]
        modes: Vec<Mode>,
        /// Defaults to the configured worker count.
        #[arg(long, value_delimiter = ',')]
        workers: Vec<usize>,
        /// Also write the report as JSON here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: String,
    },
    /// Write a seeded synthetic subtitle corpus.
    Gen {
        #[arg(long)]
        lines: usize,
        #[arg(long, default_value_t = 5000)]
        vocab: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Directory for the generated .srt files.
        #[arg(long)]
        out: PathBuf,
        /// Also write perturbed queries drawn from the corpus here.
        #[arg(long)]
        queries: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        query_count: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = if matches!(cli.command, Command::Serve { .. }) {
        "info"
    } else {
        "warn"
    };
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new(level)),
        )
        .init();

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> srtchat::Result<()> {
    let cfg = match &cli.config {
        Some(p) => EngineConfig::load(p)?,
        None => EngineConfig::default(),
    };
    let corpus_path = || {
        cli.corpus
            .clone()
            .ok_or_else(|| Error::Usage("--corpus is required".into()))
    };
    match cli.command {
        Command::Ingest { dir, out } => {
            let out = out
                .or(cli.corpus.clone())
                .unwrap_or_else(|| "corpus.jsonl".into());
            let summary = ingest(&dir, &out, &cfg.stoplist()?)?;
            println!("{}", serde_json::to_string(&summary)?);
            Ok(())
        }
        Command::Chat { session } => chat(&cfg, &corpus_path()?, session),
        Command::Bench {
            queries,
            strategies,
            modes,
            workers,
            json,
        } => {
            let stoplist = cfg.stoplist()?;
            let corpus = load_corpus(&corpus_path()?, &stoplist)?;
            let queries = read_queries(&queries)?;
            let spec = BenchSpec {
                strategies,
                modes,
                workers: if workers.is_empty() {
                    vec![cfg.workers]
                } else {
                    workers
                },
            };
            if spec.workers.contains(&0) {
                return Err(Error::Usage("workers must be at least 1".into()));
            }
            let report = run_bench(&corpus, &stoplist, &queries, &spec)?;
            print!("{}", format_table(&report));
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report)?;
                std::fs::write(&path, text + "\n").map_err(|e| io_error(&path, e))?;
            }
            Ok(())
        }
        Command::Serve { port, bind } => serve_cmd(cfg, corpus_path()?, &bind, port),
        Command::Gen {
            lines,
            vocab,
            seed,
            out,
            queries,
            query_count,
        } => {
            let synth = SynthConfig {
                lines,
                vocab,
                seed,
                ..SynthConfig::default()
            };
            let summary = write_srt_dir(&synth, &out)?;
            if let Some(path) = queries {
                let lines = generate_episodes(&synth)?.concat();
                let mut text =
                    generate_queries(&lines, query_count, seed.wrapping_add(1)).join("\n");
                text.push('\n');
                std::fs::write(&path, text).map_err(|e| io_error(&path, e))?;
            }
            println!("{}", serde_json::to_string(&summary)?);
            Ok(())
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source: e,
    }
}

fn annotate(reply: &Reply) -> String {
    match (&reply.matched, reply.provenance) {
        (Some(m), p @ (Provenance::Corpus | Provenance::Learned)) => {
            let d = if m.strategy == Strategy::Levenshtein {
                format!("{}", m.score)
            } else {
                format!("{:.3}", m.score)
            };
            format!("{}  [{} {} d={}]", reply.text, p, m.strategy, d)
        }
        (_, p) => format!("{}  [{}]", reply.text, p),
    }
}

fn chat(cfg: &EngineConfig, corpus_path: &Path, session_id: Option<String>) -> srtchat::Result<()> {
    let service = ChatService::open(cfg, corpus_path)?;
    let id = session_id
        .unwrap_or_else(|| format!("cli-{}", chrono::Utc::now().format("%Y%m%dT%H%M%S%.3fZ")));
    let mut session = service.session(&id);
    let interactive = std::io::stdin().is_terminal();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut lines = std::io::stdin().lock().lines();
    loop {
        if interactive {
            write!(out, "> ")
                .and_then(|_| out.flush())
                .map_err(|e| io_error(Path::new("stdout"), e))?;
        }
        let Some(line) = lines.next() else { break };
        let line = line.map_err(|e| io_error(Path::new("stdin"), e))?;
        let text = line.trim();
        match text {
            "" => continue,
            "/quit" => break,
            "/stats" => {
                writeln!(out, "{}", serde_json::to_string(&service.stats())?)
                    .map_err(|e| io_error(Path::new("stdout"), e))?;
            }
            _ => {
                let outcome = service.turn(&mut session, text)?;
                writeln!(out, "{}", annotate(&outcome.reply))
                    .map_err(|e| io_error(Path::new("stdout"), e))?;
            }
        }
    }
    Ok(())
}

fn serve_cmd(
    cfg: EngineConfig,
    corpus_path: PathBuf,
    bind: &str,
    port: u16,
) -> srtchat::Result<()> {
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| io_error(Path::new("runtime"), e))?;
    runtime.block_on(async move {
        let addr = format!("{bind}:{port}");
        let listener = tokio::net::TcpListener::bind(&addr)
            .await
            .map_err(|e| io_error(Path::new(&addr), e))?;
        let state = AppState::loading();
        let app = router(state.clone(), &RouterOptions::from(&cfg))?;

        let (failed_tx, failed_rx) = tokio::sync::oneshot::channel::<Error>();
        let loader = state.clone();
        tokio::task::spawn_blocking(move || match ChatService::open(&cfg, &corpus_path) {
            Ok(service) => {
                loader.set_ready(service);
            }
            Err(e) => {
                let _ = failed_tx.send(e);
            }
        });

        let (stop_tx, stop_rx) = tokio::sync::oneshot::channel::<()>();
        let watcher = tokio::spawn(async move {
            let outcome = tokio::select! {
                _ = tokio::signal::ctrl_c() => None,
                Ok(e) = failed_rx => Some(e),
            };
            let _ = stop_tx.send(());
            outcome
        });
        serve(listener, app, async move {
            let _ = stop_rx.await;
        })
        .await?;
        match watcher.await {
            Ok(Some(e)) => Err(e),
            _ => {
                tracing::info!("shut down");
                Ok(())
            }
        }
    })
}
