use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use scene_copilot::catalog::{ingest_asset, Catalog, Category, NewAsset, SelectionPolicy};
use scene_copilot::config::AppConfig;
use scene_copilot::eval::{self, AblationConfig, CannedResponse, EvalContext, ReportFormat};
use scene_copilot::grammar::{self, ValidationMode};
use scene_copilot::llm::{BackendKind, LlmBackend, ReplayBackend, ReplayStore};
use scene_copilot::nodegraph::{self, EmitTemplate};
use scene_copilot::session::{journal_to_jsonl, read_journal, record_script, replay_journal, run_script, Script};
use scene_copilot::usda;

use crate::server::{router, AppState};

pub type CliResult = Result<i32, Box<dyn std::error::Error>>;

#[derive(Parser, Debug)]
#[command(name = "scene-copilot", version, about = "Language-driven procedural scene generation and editing")]
pub struct Cli {
    /// TOML configuration file; defaults apply when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the HTTP API.
    Serve {
        #[arg(long)]
        bind: Option<String>,
    },
    /// Headless sessions.
    #[command(subcommand)]
    Session(SessionCmd),
    /// Executable-rate evaluation over a prompt corpus.
    Eval(EvalArgs),
    /// Build a replay store from canned replies for all four ablation rows.
    RecordEval {
        #[arg(long)]
        canned: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Asset catalog.
    #[command(subcommand)]
    Assets(AssetsCmd),
    /// Check generator commands, one per line, and print JSON reports.
    Validate {
        /// File of commands, or `-` for stdin.
        file: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Emit a program from a node graph JSON document.
    Transpile {
        graph: PathBuf,
        #[arg(long, default_value = "instructions")]
        template: String,
    },
    /// Rebuild a node graph from an instruction program.
    Ungraph { program: PathBuf },
    /// Condense a .usda scene and print its dictionary text.
    Condense {
        scene: PathBuf,
        /// Also write `<stem>.condensed.usda` and `<stem>.sidecar.tsv` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SessionCmd {
    /// Run a scripted session and print step outcomes and the journal.
    Run {
        #[arg(long)]
        script: PathBuf,
        /// Replay store to answer model calls; by default the script's own
        /// replies are recorded first and then replayed.
        #[arg(long)]
        store: Option<PathBuf>,
        /// Write the recorded store here.
        #[arg(long)]
        save_store: Option<PathBuf>,
        /// Write the journal here instead of stdout.
        #[arg(long)]
        journal: Option<PathBuf>,
    },
    /// Rebuild session state from a journal and print it.
    Replay {
        journal: PathBuf,
        #[arg(long)]
        session_id: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

impl Toggle {
    fn on(self) -> bool {
        matches!(self, Toggle::On)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BackendChoice {
    Replay,
    Live,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// One prompt per line.
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long, value_enum, default_value = "on")]
    pub rag: Toggle,
    #[arg(long, value_enum, default_value = "on")]
    pub few_shot: Toggle,
    /// Run all four retrieval/few-shot combinations instead.
    #[arg(long)]
    pub all_rows: bool,
    #[arg(long, value_enum, default_value = "replay")]
    pub backend: BackendChoice,
    /// Replay store (overrides the configured one).
    #[arg(long)]
    pub store: Option<PathBuf>,
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum AssetsCmd {
    List {
        #[arg(long)]
        category: Option<String>,
    },
    Search {
        query: String,
        #[arg(short, default_value_t = 5)]
        k: usize,
    },
    /// Per-category record counts.
    Stats,
    /// Decide between a catalog asset and text-to-3D for a description.
    Select {
        query: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Ingest {
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long)]
        category: String,
        #[arg(long)]
        description: String,
        #[arg(long)]
        license: Option<String>,
        #[arg(long)]
        source_url: Option<String>,
    },
}

fn load_config(path: Option<&Path>) -> Result<AppConfig, Box<dyn std::error::Error>> {
    Ok(match path {
        Some(p) => AppConfig::load(p)?,
        None => AppConfig::default(),
    })
}

fn read_input(path: &Path) -> std::io::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &impl serde::Serialize) {
    out(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

pub fn run(cli: Cli) -> CliResult {
    let config = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Serve { bind } => serve(config, bind),
        Command::Session(cmd) => session(config, cmd),
        Command::Eval(args) => eval_cmd(config, args),
        Command::RecordEval { canned, out } => {
            let canned: Vec<CannedResponse> = serde_json::from_str(&std::fs::read_to_string(canned)?)?;
            let ctx = eval_context(&config, Arc::new(ReplayBackend::new(ReplayStore::default())))?;
            let rows = AblationConfig::ablation_rows(AblationConfig::default());
            let store = eval::record_responses(&ctx, &rows, &canned)?;
            store.save(&out)?;
            eprintln!("recorded {} responses to {}", store.len(), out.display());
            Ok(0)
        }
        Command::Assets(cmd) => assets(config, cmd),
        Command::Validate { file, strict } => {
            let res = config.resources()?;
            let mode = if strict { ValidationMode::Strict } else { ValidationMode::Lenient };
            let mut all_ok = true;
            let reports: Vec<_> = read_input(&file)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|line| {
                    let (_, report) = grammar::check_line(line, &res.grammar, mode);
                    all_ok &= report.executable;
                    serde_json::json!({"command": line, "report": report})
                })
                .collect();
            print_json(&reports);
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::Transpile { graph, template } => {
            let g = nodegraph::parse_graph(&read_input(&graph)?)?;
            let t = EmitTemplate::by_name(&template)?;
            out(&nodegraph::transpile_with(&g, &t)?.text());
            Ok(0)
        }
        Command::Ungraph { program } => {
            print_json(&nodegraph::ungraph(&read_input(&program)?)?.normalized());
            Ok(0)
        }
        Command::Condense { scene, out_dir } => {
            let tree = usda::parse_usda(&read_input(&scene)?)?;
            let cs = usda::condense(&tree);
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(&dir)?;
                let stem = scene.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or("scene".into());
                std::fs::write(dir.join(format!("{stem}.condensed.usda")), cs.tree.to_usda())?;
                std::fs::write(dir.join(format!("{stem}.sidecar.tsv")), cs.sidecar.to_tsv())?;
            }
            out(&format!("{}\n", usda::to_dictionary_text(&cs)));
            Ok(0)
        }
    }
}

fn serve(mut config: AppConfig, bind: Option<String>) -> CliResult {
    if let Some(b) = bind {
        config.server.bind = b;
    }
    let resources = config.resources()?;
    let backend = config.backend.build()?;
    let addr = config.server.bind.clone();
    let state = Arc::new(AppState::new(config, resources, backend));
    let restored = state.restore_sessions()?;
    if restored > 0 {
        eprintln!("restored {restored} session(s)");
    }
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(&addr).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, router(state)).await
    })?;
    Ok(0)
}

fn session(config: AppConfig, cmd: SessionCmd) -> CliResult {
    match cmd {
        SessionCmd::Run {
            script,
            store,
            save_store,
            journal,
        } => {
            let script: Script = serde_json::from_str(&std::fs::read_to_string(script)?)?;
            let res = config.resources()?;
            let deps = |backend: Arc<dyn LlmBackend>| config.session_deps(&res, backend, config.clock());
            let store = match store {
                Some(p) => ReplayStore::load(&p)?,
                None => record_script(&script, deps),
            };
            if let Some(p) = save_store {
                store.save(&p)?;
            }
            let (session, outcomes) = run_script(&script, Arc::new(deps(Arc::new(ReplayBackend::new(store)))));
            let mut ok = true;
            for o in &outcomes {
                ok &= o.as_expected();
                eprintln!(
                    "step {:>2}: {:<22} {:?}{}",
                    o.step,
                    o.error.as_deref().unwrap_or("ok"),
                    o.phase,
                    if o.as_expected() { "" } else { "  (unexpected)" }
                );
            }
            let text = journal_to_jsonl(session.journal());
            match journal {
                Some(p) => std::fs::write(p, text)?,
                None => out(&text),
            }
            Ok(if ok { 0 } else { 1 })
        }
        SessionCmd::Replay { journal, session_id } => {
            let events = read_journal(&journal)?;
            let id = session_id.unwrap_or_else(|| {
                journal.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
            });
            print_json(&replay_journal(&id, &events)?);
            Ok(0)
        }
    }
}

fn eval_context(config: &AppConfig, backend: Arc<dyn LlmBackend>) -> Result<EvalContext, Box<dyn std::error::Error>> {
    let res = config.resources()?;
    Ok(EvalContext {
        grammar: res.grammar,
        templates: res.templates,
        few_shots: res.few_shots,
        docs: res.docs,
        backend,
        model: config.models.codex.clone(),
    })
}

fn eval_cmd(mut config: AppConfig, args: EvalArgs) -> CliResult {
    config.backend.kind = match args.backend {
        BackendChoice::Replay => BackendKind::Replay,
        BackendChoice::Live => BackendKind::Http,
    };
    if args.store.is_some() {
        config.backend.replay_store = args.store.clone();
    }
    let ctx = eval_context(&config, config.backend.build()?)?;
    let corpus = eval::load_corpus(&read_input(&args.corpus)?);
    let base = AblationConfig {
        use_rag: args.rag.on(),
        use_few_shot: args.few_shot.on(),
        k: config.session.k,
        budget: config.session.budget,
        mode: if args.strict { ValidationMode::Strict } else { ValidationMode::Lenient },
    };
    let rows: Vec<AblationConfig> = if args.all_rows { AblationConfig::ablation_rows(base).to_vec() } else { vec![base] };
    let reports = rows.iter().map(|r| eval::run_eval(&ctx, r, &corpus)).collect::<Result<Vec<_>, _>>()?;
    let format = match args.format {
        Format::Table => ReportFormat::Table,
        Format::Json => ReportFormat::Json,
    };
    out(&eval::render_reports(&reports, format));
    if let Some(out) = args.out {
        std::fs::write(out, eval::render_reports(&reports, ReportFormat::Json))?;
    }
    Ok(0)
}

fn open_catalog(config: &AppConfig) -> Result<Catalog, Box<dyn std::error::Error>> {
    Ok(match &config.paths.catalog_manifest {
        Some(p) => Catalog::load(p)?,
        None => Catalog::bundled(),
    })
}

fn assets(config: AppConfig, cmd: AssetsCmd) -> CliResult {
    match cmd {
        AssetsCmd::List { category } => {
            let catalog = open_catalog(&config)?;
            let filter: Option<Category> = category.map(|c| c.parse()).transpose().map_err(|c| format!("unknown category `{c}`"))?;
            for r in catalog.records().iter().filter(|r| filter.is_none_or(|c| r.category == c)) {
                out(&format!("{}\t{}\t{}\n", r.id, r.category.as_str(), r.name));
            }
        }
        AssetsCmd::Search { query, k } => {
            let catalog = open_catalog(&config)?;
            for (r, score) in catalog.search(&query, k) {
                out(&format!("{score:.4}\t{}\t{}\n", r.id, r.name));
            }
        }
        AssetsCmd::Stats => {
            let catalog = open_catalog(&config)?;
            for (c, n) in catalog.counts() {
                out(&format!("{:<11} {n:>4}\n", c.as_str()));
            }
            out(&format!("{:<11} {:>4}\n", "total", catalog.len()));
        }
        AssetsCmd::Select { query, seed } => {
            let catalog = open_catalog(&config)?;
            let policy = SelectionPolicy {
                seed,
                ..config.session.selection_policy
            };
            print_json(&catalog.select_source(&query, &policy)?);
        }
        AssetsCmd::Ingest {
            manifest,
            code,
            name,
            category,
            description,
            license,
            source_url,
        } => {
            let manifest = manifest
                .or(config.paths.catalog_manifest.clone())
                .ok_or("--manifest is required unless the config names a catalog manifest")?;
            let meta = NewAsset {
                name,
                category,
                description,
                license,
                source_url,
            };
            print_json(&ingest_asset(&manifest, &code, &meta)?);
        }
    }
    Ok(0)
}
