//! Human-in-the-loop authoring sessions.
//!
//! A session moves from a text prompt to an approved generator command, then
//! through approved edits of the coarse and fine scenes to a render. Every
//! step is appended to a journal and [`SessionState`] is a pure fold over it,
//! so a journal file alone reproduces a session.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::catalog::{Catalog, SelectionPolicy, SourceDecision, SourceKind};
use crate::grammar::{self, CommandAst, Grammar, ValidationMode, ValidationReport};
use crate::llm::{CompletionRequest, LlmBackend, LlmError, Message, ModelRouting, Recorder, ReplayStore, ScriptedBackend};
use crate::prompt::{self, CotError, CotResponse, FewShotPair, PromptBundle, PromptError, Templates};
use crate::retrieval::{merge_ranked, Chunk, IndexParams, RetrievalIndex, ScoredChunk, TaggedChunk};
use crate::usda::{self, Sidecar, UsdaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Phase {
    AwaitingPrompt,
    CommandProposed,
    CoarseSceneReady,
    EditingCoarse,
    FineSceneReady,
    EditingFine,
    RenderQueued,
    Done,
    Failed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EventKind {
    UserPrompt,
    CommandProposed,
    CommandApproved,
    CommandRejected,
    SceneIngested,
    EditProposed,
    EditApproved,
    EditRejected,
    SelectionChanged,
    RenderRequested,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JournalEvent {
    pub seq: u64,
    pub timestamp_ms: u64,
    pub kind: EventKind,
    pub payload: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Coarse,
    Fine,
}

impl Stage {
    pub fn tag(self) -> &'static str {
        match self {
            Stage::Coarse => "coarse",
            Stage::Fine => "fine",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProposedCommand {
    pub command: String,
    pub ast: Option<CommandAst>,
    pub report: ValidationReport,
}

/// What the state keeps of an ingested scene.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SceneRef {
    pub index_fingerprint: String,
    pub prim_paths: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PendingEdit {
    pub stage: Stage,
    pub text: String,
    pub cot: CotResponse,
    pub code: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionState {
    pub session_id: String,
    pub phase: Phase,
    pub last_prompt: Option<String>,
    pub proposed_command: Option<ProposedCommand>,
    pub approved_command: Option<String>,
    pub coarse_db: Option<SceneRef>,
    pub fine_db: Option<SceneRef>,
    pub selection: Vec<String>,
    pub pending_edit: Option<PendingEdit>,
    pub applied_edits: Vec<String>,
    pub render_command: Option<String>,
    pub last_error: Option<String>,
    /// Number of journal events folded into this state.
    pub journal_offset: u64,
}

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("`{op}` is not allowed in phase {phase:?}")]
    WrongPhase { op: &'static str, phase: Phase },
    #[error("proposed command is not executable")]
    NotExecutable(ValidationReport),
    #[error("no command found in model response")]
    NoCommandFound,
    #[error("no pending edit")]
    NoPendingEdit,
    #[error("selection path `{0}` is not in the scene")]
    UnknownSelectionPath(String),
    #[error("scene generator failed: {0}")]
    GeneratorFailed(String),
    #[error(transparent)]
    Backend(#[from] LlmError),
    #[error(transparent)]
    Prompt(#[from] PromptError),
    #[error(transparent)]
    Cot(#[from] CotError),
    #[error(transparent)]
    Scene(#[from] UsdaError),
    #[error("corrupt journal at seq {seq}: {reason}")]
    CorruptJournal { seq: u64, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl SessionError {
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::WrongPhase { .. } => "WrongPhase",
            SessionError::NotExecutable(_) => "NotExecutable",
            SessionError::NoCommandFound => "NoCommandFound",
            SessionError::NoPendingEdit => "NoPendingEdit",
            SessionError::UnknownSelectionPath(_) => "UnknownSelectionPath",
            SessionError::GeneratorFailed(_) => "GeneratorFailed",
            SessionError::Backend(e) => e.code(),
            SessionError::Prompt(_) => "PromptError",
            SessionError::Cot(CotError::MissingOutputTag) => "MissingOutputTag",
            SessionError::Cot(CotError::UnbalancedTags(_)) => "UnbalancedTags",
            SessionError::Cot(CotError::EmptyOutput) => "EmptyOutput",
            SessionError::Scene(_) => "SceneParseError",
            SessionError::CorruptJournal { .. } => "CorruptJournal",
            SessionError::Io(_) => "Io",
        }
    }
}

fn corrupt(seq: u64, reason: impl Into<String>) -> SessionError {
    SessionError::CorruptJournal {
        seq,
        reason: reason.into(),
    }
}

fn field<T: DeserializeOwned>(ev: &JournalEvent, name: &str) -> Result<T, SessionError> {
    let v = ev.payload.get(name).cloned().unwrap_or(Value::Null);
    serde_json::from_value(v).map_err(|e| corrupt(ev.seq, format!("payload field `{name}`: {e}")))
}

impl SessionState {
    pub fn new(session_id: impl Into<String>) -> Self {
        SessionState {
            session_id: session_id.into(),
            phase: Phase::AwaitingPrompt,
            last_prompt: None,
            proposed_command: None,
            approved_command: None,
            coarse_db: None,
            fine_db: None,
            selection: Vec::new(),
            pending_edit: None,
            applied_edits: Vec::new(),
            render_command: None,
            last_error: None,
            journal_offset: 0,
        }
    }

    /// Folds one event into the state. Events that the transition table does
    /// not allow in the current phase are rejected without changing anything.
    pub fn apply(&mut self, ev: &JournalEvent) -> Result<(), SessionError> {
        if ev.seq != self.journal_offset {
            return Err(corrupt(ev.seq, format!("expected seq {}", self.journal_offset)));
        }
        let mut next = self.clone();
        next.transition(ev)?;
        next.journal_offset += 1;
        *self = next;
        Ok(())
    }

    fn transition(&mut self, ev: &JournalEvent) -> Result<(), SessionError> {
        use Phase::*;
        let bad = |s: &SessionState| corrupt(ev.seq, format!("{:?} not allowed in phase {:?}", ev.kind, s.phase));
        match ev.kind {
            EventKind::UserPrompt => {
                if !matches!(self.phase, AwaitingPrompt | EditingCoarse | EditingFine) {
                    return Err(bad(self));
                }
                self.last_prompt = Some(field(ev, "text")?);
            }
            EventKind::CommandProposed => {
                if self.phase != AwaitingPrompt {
                    return Err(bad(self));
                }
                self.proposed_command = Some(ProposedCommand {
                    command: field(ev, "command")?,
                    ast: field(ev, "ast")?,
                    report: field(ev, "report")?,
                });
                self.phase = CommandProposed;
                self.last_error = None;
            }
            EventKind::CommandRejected => {
                if self.phase != CommandProposed {
                    return Err(bad(self));
                }
                self.proposed_command = None;
                self.phase = AwaitingPrompt;
            }
            EventKind::CommandApproved => {
                let executable = self.proposed_command.as_ref().is_some_and(|p| p.report.executable);
                if self.phase != CommandProposed || !executable || self.approved_command.is_some() {
                    return Err(bad(self));
                }
                self.approved_command = Some(field(ev, "command")?);
            }
            EventKind::SceneIngested => {
                let stage: Stage = field(ev, "stage")?;
                let scene = SceneRef {
                    index_fingerprint: field(ev, "index_fingerprint")?,
                    prim_paths: field(ev, "prim_paths")?,
                };
                match (stage, self.phase) {
                    (Stage::Coarse, CommandProposed) if self.approved_command.is_some() => {
                        self.coarse_db = Some(scene);
                        self.phase = CoarseSceneReady;
                    }
                    (Stage::Fine, EditingCoarse) if self.pending_edit.is_none() && !self.applied_edits.is_empty() => {
                        self.fine_db = Some(scene);
                        self.phase = FineSceneReady;
                    }
                    _ => return Err(bad(self)),
                }
            }
            EventKind::SelectionChanged => {
                self.phase = match self.phase {
                    CoarseSceneReady | EditingCoarse => EditingCoarse,
                    FineSceneReady | EditingFine => EditingFine,
                    _ => return Err(bad(self)),
                };
                self.selection = field(ev, "paths")?;
            }
            EventKind::EditProposed => {
                let stage = match self.phase {
                    EditingCoarse => Stage::Coarse,
                    EditingFine => Stage::Fine,
                    _ => return Err(bad(self)),
                };
                if self.pending_edit.is_some() {
                    return Err(bad(self));
                }
                self.pending_edit = Some(PendingEdit {
                    stage,
                    text: field(ev, "text")?,
                    cot: field(ev, "cot")?,
                    code: field(ev, "code")?,
                });
                self.last_error = None;
            }
            EventKind::EditRejected => {
                if self.pending_edit.take().is_none() {
                    return Err(bad(self));
                }
            }
            EventKind::EditApproved => {
                let Some(edit) = self.pending_edit.take() else { return Err(bad(self)) };
                self.applied_edits.push(edit.code);
                match self.phase {
                    EditingCoarse => {}
                    EditingFine => self.phase = RenderQueued,
                    _ => return Err(bad(self)),
                }
            }
            EventKind::RenderRequested => {
                if self.phase != RenderQueued {
                    return Err(bad(self));
                }
                self.render_command = Some(field(ev, "command")?);
                self.phase = Done;
            }
            EventKind::Error => {
                if matches!(self.phase, Done | Failed) {
                    return Err(bad(self));
                }
                let message: String = field(ev, "message")?;
                if field::<Option<bool>>(ev, "fatal")?.unwrap_or(false) {
                    self.phase = Failed;
                }
                self.last_error = Some(message);
            }
        }
        Ok(())
    }
}

/// Folds a whole journal. An empty journal gives a fresh session.
pub fn replay_journal(session_id: &str, events: &[JournalEvent]) -> Result<SessionState, SessionError> {
    let mut state = SessionState::new(session_id);
    for ev in events {
        state.apply(ev)?;
    }
    Ok(state)
}

/// Reads a JSON-lines journal.
pub fn read_journal(path: &Path) -> Result<Vec<JournalEvent>, SessionError> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let ev: JournalEvent = serde_json::from_str(&line).map_err(|e| corrupt(i as u64, e.to_string()))?;
        if ev.seq != out.len() as u64 {
            return Err(corrupt(ev.seq, format!("expected seq {}", out.len())));
        }
        out.push(ev);
    }
    Ok(out)
}

pub fn journal_to_jsonl(events: &[JournalEvent]) -> String {
    let mut s = String::new();
    for ev in events {
        s.push_str(&serde_json::to_string(ev).expect("event serializes"));
        s.push('\n');
    }
    s
}

pub trait Clock: Send + Sync {
    fn now_ms(&self) -> u64;
}

/// Wall-clock milliseconds since the Unix epoch.
#[derive(Debug, Default)]
pub struct SystemClock;

impl Clock for SystemClock {
    fn now_ms(&self) -> u64 {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0)
    }
}

/// Ticks once per reading, for reproducible journals.
#[derive(Debug, Default)]
pub struct LogicalClock(AtomicU64);

impl Clock for LogicalClock {
    fn now_ms(&self) -> u64 {
        self.0.fetch_add(1, Ordering::SeqCst)
    }
}

#[derive(Debug, Error)]
#[error("{0}")]
pub struct GeneratorError(pub String);

/// Produces scenes as USDA text. Edit code is passed through, never run here.
pub trait SceneGenerator: Send + Sync {
    fn generate(&self, command: &str) -> Result<String, GeneratorError>;
    fn refine(&self, coarse_usda: &str, edit_code: &str) -> Result<String, GeneratorError>;
    /// Launches or records the final render and returns a description of it.
    fn render(&self, command: &str) -> Result<String, GeneratorError>;
}

fn hash64(parts: &[&str]) -> u64 {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0]);
    }
    u64::from_le_bytes(h.finalize()[..8].try_into().unwrap())
}

/// Seeded synthetic scenes with terrain, camera and creature prims.
#[derive(Debug, Clone, Copy, Default)]
pub struct SimulatedGenerator {
    pub seed: u64,
}

const BIOMES: [&str; 6] = ["arctic", "desert", "forest", "canyon", "coast", "plain"];
const CREATURES: [&str; 5] = ["Snake", "Fish", "Bird", "Beetle", "Deer"];

fn vec3(rng: &mut ChaCha20Rng, scale: f64) -> String {
    let mut c = || (rng.random::<f64>() * 2.0 - 1.0) * scale;
    format!("({:.4}, {:.4}, {:.4})", c(), c(), c().abs())
}

impl SceneGenerator for SimulatedGenerator {
    fn generate(&self, command: &str) -> Result<String, GeneratorError> {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed ^ hash64(&[command]));
        let biome = BIOMES
            .iter()
            .find(|b| command.contains(*b))
            .copied()
            .unwrap_or(BIOMES[rng.random_range(0..BIOMES.len())]);
        let mut s = String::from(
            "#usda 1.0\n(\n    defaultPrim = \"World\"\n    metersPerUnit = 1\n    upAxis = \"Z\"\n)\n\ndef Xform \"World\"\n{\n",
        );
        s.push_str(&format!(
            "    def Mesh \"Terrain\"\n    {{\n        token biome = \"{biome}\"\n        float roughness = {:.4}\n        int seed = {}\n        double3 xformOp:translate = (0, 0, 0)\n        uniform token[] xformOpOrder = [\"xformOp:translate\"]\n    }}\n",
            rng.random::<f64>(),
            rng.random_range(0..100_000u32)
        ));
        s.push_str(&format!(
            "    def Camera \"Camera\"\n    {{\n        float focalLength = {}\n        float2 clippingRange = (0.1, 1000)\n        double3 xformOp:translate = {}\n        token projection = \"perspective\"\n    }}\n",
            [24, 35, 50][rng.random_range(0..3)],
            vec3(&mut rng, 20.0)
        ));
        let n = rng.random_range(1..=4);
        for i in 0..n {
            let kind = CREATURES[rng.random_range(0..CREATURES.len())];
            s.push_str(&format!(
                "    def Xform \"{kind}_{i:03}\"\n    {{\n        string species = \"{}\"\n        double3 xformOp:translate = {}\n        float scale = {:.4}\n    }}\n",
                kind.to_lowercase(),
                vec3(&mut rng, 10.0),
                0.5 + rng.random::<f64>()
            ));
        }
        s.push_str("}\n");
        Ok(s)
    }

    fn refine(&self, coarse_usda: &str, edit_code: &str) -> Result<String, GeneratorError> {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed ^ hash64(&[coarse_usda, edit_code]));
        let mut s = coarse_usda.trim_end().to_string();
        s.push_str("\n\ndef Xform \"Details\"\n{\n");
        for i in 0..rng.random_range(2..=5) {
            s.push_str(&format!(
                "    def Mesh \"Rock_{i:03}\"\n    {{\n        double3 xformOp:translate = {}\n        float scale = {:.4}\n        token material = \"mossy_stone\"\n    }}\n",
                vec3(&mut rng, 15.0),
                0.2 + rng.random::<f64>()
            ));
        }
        s.push_str(&format!(
            "    def PointInstancer \"GrassScatter\"\n    {{\n        int instanceCount = {}\n        token density = \"high\"\n    }}\n}}\n",
            rng.random_range(1000..10_000u32)
        ));
        Ok(s)
    }

    fn render(&self, command: &str) -> Result<String, GeneratorError> {
        Ok(format!("simulated render: {command}"))
    }
}

/// Runs the generator as a subprocess in `workdir`.
///
/// `generate` runs the command and reads `scene_file`; `refine` writes the
/// edit code to a file and runs `refine_args` followed by that file's path;
/// `render` runs the command again.
#[derive(Debug, Clone)]
pub struct LiveGenerator {
    pub workdir: PathBuf,
    pub scene_file: PathBuf,
    pub refine_args: Vec<String>,
    /// Replaces the command's program when set.
    pub executable_override: Option<String>,
}

impl LiveGenerator {
    fn run(&self, args: &[String]) -> Result<String, GeneratorError> {
        let (program, rest) = match &self.executable_override {
            Some(p) => (p.clone(), args.get(1..).unwrap_or(&[]).to_vec()),
            None => {
                let (first, rest) = args.split_first().ok_or_else(|| GeneratorError("empty command".into()))?;
                (first.clone(), rest.to_vec())
            }
        };
        let out = Command::new(&program)
            .args(&rest)
            .current_dir(&self.workdir)
            .output()
            .map_err(|e| GeneratorError(format!("cannot start `{program}`: {e}")))?;
        if !out.status.success() {
            return Err(GeneratorError(format!(
                "`{program}` exited with {}: {}",
                out.status,
                String::from_utf8_lossy(&out.stderr).trim()
            )));
        }
        Ok(String::from_utf8_lossy(&out.stdout).into_owned())
    }

    fn read_scene(&self) -> Result<String, GeneratorError> {
        let p = self.workdir.join(&self.scene_file);
        fs::read_to_string(&p).map_err(|e| GeneratorError(format!("cannot read {}: {e}", p.display())))
    }
}

impl SceneGenerator for LiveGenerator {
    fn generate(&self, command: &str) -> Result<String, GeneratorError> {
        let args: Vec<String> = command.split_whitespace().map(str::to_string).collect();
        self.run(&args)?;
        self.read_scene()
    }

    fn refine(&self, _coarse_usda: &str, edit_code: &str) -> Result<String, GeneratorError> {
        let file = self.workdir.join(format!("edit_{:016x}.py", hash64(&[edit_code])));
        fs::write(&file, edit_code).map_err(|e| GeneratorError(e.to_string()))?;
        let mut args = self.refine_args.clone();
        args.push(file.to_string_lossy().into_owned());
        self.run(&args)?;
        self.read_scene()
    }

    fn render(&self, command: &str) -> Result<String, GeneratorError> {
        let args: Vec<String> = command.split_whitespace().map(str::to_string).collect();
        self.run(&args)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SessionConfig {
    /// Retrieved chunks per query.
    pub k: usize,
    /// Prompt budget in whitespace tokens.
    pub budget: usize,
    pub validation_mode: ValidationMode,
    /// Chunk size for scene dictionaries.
    pub scene_chunk_size: usize,
    pub selection_policy: SelectionPolicy,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            k: 4,
            budget: 8192,
            validation_mode: ValidationMode::Lenient,
            scene_chunk_size: 64,
            selection_policy: SelectionPolicy::default(),
        }
    }
}

/// Everything a session needs besides its own journal.
pub struct SessionDeps {
    pub grammar: Arc<Grammar>,
    pub templates: Arc<Templates>,
    pub few_shots: Arc<Vec<FewShotPair>>,
    /// Documentation the command prompt retrieves from.
    pub docs: Arc<RetrievalIndex>,
    pub backend: Arc<dyn LlmBackend>,
    pub routing: ModelRouting,
    pub generator: Arc<dyn SceneGenerator>,
    pub catalog: Option<Arc<Catalog>>,
    pub clock: Arc<dyn Clock>,
    pub config: SessionConfig,
}

/// Scene material kept alongside the state.
#[derive(Debug, Clone)]
pub struct SceneData {
    pub condensed_usda: String,
    pub sidecar: Sidecar,
    pub dictionary: String,
    pub index: RetrievalIndex,
}

impl SceneData {
    pub fn rehydrated_usda(&self) -> Result<String, SessionError> {
        let tree = usda::parse_usda(&self.condensed_usda)?;
        let cs = usda::CondensedScene {
            tree,
            sidecar: self.sidecar.clone(),
        };
        Ok(cs.rehydrate().to_usda())
    }
}

fn scene_index(dictionary: &str, stage: Stage, chunk_size: usize) -> RetrievalIndex {
    let params = IndexParams {
        chunk_size: chunk_size.max(1),
        ..IndexParams::default()
    };
    RetrievalIndex::build(&[(stage.tag().to_string(), dictionary.to_string())], params).expect("chunk size is positive")
}

pub struct Session {
    deps: Arc<SessionDeps>,
    state: SessionState,
    journal: Vec<JournalEvent>,
    coarse: Option<SceneData>,
    fine: Option<SceneData>,
    sink: Option<File>,
}

fn messages_json(m: &[Message]) -> Value {
    serde_json::to_value(m).expect("messages serialize")
}

impl Session {
    pub fn new(session_id: impl Into<String>, deps: Arc<SessionDeps>) -> Self {
        Session {
            deps,
            state: SessionState::new(session_id),
            journal: Vec::new(),
            coarse: None,
            fine: None,
            sink: None,
        }
    }

    /// Appends every event to `path` as it is recorded. Existing events are
    /// written first.
    pub fn persist_to(&mut self, path: &Path) -> Result<(), SessionError> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut f = OpenOptions::new().create(true).truncate(true).write(true).open(path)?;
        f.write_all(journal_to_jsonl(&self.journal).as_bytes())?;
        f.flush()?;
        self.sink = Some(f);
        Ok(())
    }

    /// Rebuilds a session from its journal, including the scene indexes,
    /// whose fingerprints are checked against the journal.
    pub fn restore(session_id: &str, deps: Arc<SessionDeps>, events: Vec<JournalEvent>) -> Result<Self, SessionError> {
        let mut s = Session::new(session_id, deps);
        for ev in events {
            s.state.apply(&ev)?;
            if ev.kind == EventKind::SceneIngested {
                let stage: Stage = field(&ev, "stage")?;
                let data = s.scene_from_payload(&ev, stage)?;
                match stage {
                    Stage::Coarse => s.coarse = Some(data),
                    Stage::Fine => s.fine = Some(data),
                }
            }
            s.journal.push(ev);
        }
        Ok(s)
    }

    fn scene_from_payload(&self, ev: &JournalEvent, stage: Stage) -> Result<SceneData, SessionError> {
        let dictionary: String = field(ev, "dictionary")?;
        let sidecar_tsv: String = field(ev, "sidecar_tsv")?;
        let sidecar = Sidecar::from_tsv(&sidecar_tsv).map_err(|e| corrupt(ev.seq, e.to_string()))?;
        let index = scene_index(&dictionary, stage, self.deps.config.scene_chunk_size);
        let expected: String = field(ev, "index_fingerprint")?;
        if index.fingerprint() != expected {
            return Err(corrupt(ev.seq, "scene index fingerprint mismatch"));
        }
        Ok(SceneData {
            condensed_usda: field(ev, "condensed_usda")?,
            sidecar,
            dictionary,
            index,
        })
    }

    pub fn id(&self) -> &str {
        &self.state.session_id
    }

    pub fn state(&self) -> &SessionState {
        &self.state
    }

    pub fn journal(&self) -> &[JournalEvent] {
        &self.journal
    }

    pub fn coarse_scene(&self) -> Option<&SceneData> {
        self.coarse.as_ref()
    }

    pub fn fine_scene(&self) -> Option<&SceneData> {
        self.fine.as_ref()
    }

    /// The most refined scene so far.
    pub fn current_scene(&self) -> Option<&SceneData> {
        self.fine.as_ref().or(self.coarse.as_ref())
    }

    fn emit(&mut self, kind: EventKind, payload: Value) -> Result<&JournalEvent, SessionError> {
        let ev = JournalEvent {
            seq: self.journal.len() as u64,
            timestamp_ms: self.deps.clock.now_ms(),
            kind,
            payload,
        };
        self.state.apply(&ev)?;
        if let Some(f) = &mut self.sink {
            let mut line = serde_json::to_string(&ev).expect("event serializes");
            line.push('\n');
            f.write_all(line.as_bytes())?;
            f.flush()?;
        }
        self.journal.push(ev);
        Ok(self.journal.last().unwrap())
    }

    fn emit_error(&mut self, op: &str, err: &SessionError, fatal: bool, extra: Value) -> Result<(), SessionError> {
        let mut payload = json!({"op": op, "code": err.code(), "message": err.to_string(), "fatal": fatal});
        if let (Value::Object(p), Value::Object(e)) = (&mut payload, extra) {
            p.extend(e);
        }
        self.emit(EventKind::Error, payload)?;
        Ok(())
    }

    fn require(&self, op: &'static str, allowed: &[Phase]) -> Result<(), SessionError> {
        if allowed.contains(&self.state.phase) {
            Ok(())
        } else {
            Err(SessionError::WrongPhase {
                op,
                phase: self.state.phase,
            })
        }
    }

    fn complete(&self, model: &str, bundle: &PromptBundle) -> Result<(CompletionRequest, String), LlmError> {
        let req = CompletionRequest::new(model, bundle.messages());
        let resp = self.deps.backend.complete(&req)?;
        Ok((req, resp))
    }

    /// Retrieves documentation, asks the command model and validates the
    /// command it returns.
    pub fn submit_prompt(&mut self, text: &str) -> Result<ProposedCommand, SessionError> {
        self.require("submit_prompt", &[Phase::AwaitingPrompt, Phase::CommandProposed])?;
        if self.state.phase == Phase::CommandProposed {
            self.emit(EventKind::CommandRejected, json!({"reason": "superseded by a new prompt"}))?;
        }
        self.emit(EventKind::UserPrompt, json!({"text": text}))?;

        let deps = self.deps.clone();
        let hits = deps.docs.query(text, deps.config.k);
        let retrieved = merge_ranked(&[("codebase", hits)], deps.config.k);
        let bundle = match prompt::build_codex_prompt(&deps.templates, text, &retrieved, &deps.few_shots, deps.config.budget) {
            Ok(b) => b,
            Err(e) => {
                let e = SessionError::from(e);
                self.emit_error("submit_prompt", &e, false, json!({}))?;
                return Err(e);
            }
        };
        let (req, response) = match self.complete(&deps.routing.codex, &bundle) {
            Ok(r) => r,
            Err(e) => {
                let e = SessionError::from(e);
                self.emit_error("submit_prompt", &e, false, json!({}))?;
                return Err(e);
            }
        };
        let command = match prompt::extract_command(&response, &deps.grammar) {
            Ok(c) => c,
            Err(_) => {
                let e = SessionError::NoCommandFound;
                self.emit_error("submit_prompt", &e, false, json!({"response": response}))?;
                return Err(e);
            }
        };
        let (ast, report) = grammar::check_line(&command, &deps.grammar, deps.config.validation_mode);
        let proposed = ProposedCommand { command, ast, report };
        self.emit(
            EventKind::CommandProposed,
            json!({
                "model": req.model_id,
                "fingerprint": req.fingerprint(),
                "messages": messages_json(&req.messages),
                "response": response,
                "command": proposed.command,
                "ast": proposed.ast,
                "report": proposed.report,
            }),
        )?;
        Ok(proposed)
    }

    fn ingest(&mut self, usda_text: &str, stage: Stage) -> Result<(), SessionError> {
        let tree = usda::parse_usda(usda_text)?;
        let condensed = usda::condense(&tree);
        let dictionary = usda::to_dictionary_text(&condensed);
        let index = scene_index(&dictionary, stage, self.deps.config.scene_chunk_size);
        let data = SceneData {
            condensed_usda: condensed.tree.to_usda(),
            sidecar: condensed.sidecar.clone(),
            dictionary: dictionary.clone(),
            index,
        };
        self.emit(
            EventKind::SceneIngested,
            json!({
                "stage": stage,
                "prim_paths": tree.paths(),
                "index_fingerprint": data.index.fingerprint(),
                "dictionary": data.dictionary,
                "condensed_usda": data.condensed_usda,
                "sidecar_tsv": data.sidecar.to_tsv(),
            }),
        )?;
        match stage {
            Stage::Coarse => self.coarse = Some(data),
            Stage::Fine => self.fine = Some(data),
        }
        self.emit(EventKind::SelectionChanged, json!({"paths": Vec::<String>::new()}))?;
        Ok(())
    }

    fn fail(&mut self, op: &str, e: SessionError) -> SessionError {
        if let Err(inner) = self.emit_error(op, &e, true, json!({})) {
            return inner;
        }
        e
    }

    /// Runs the approved command through the generator and ingests the
    /// coarse scene.
    pub fn approve_command(&mut self) -> Result<(), SessionError> {
        self.require("approve_command", &[Phase::CommandProposed])?;
        let proposed = self.state.proposed_command.clone().expect("phase implies a proposal");
        let Some(ast) = proposed.ast.filter(|_| proposed.report.executable) else {
            return Err(SessionError::NotExecutable(proposed.report));
        };
        let command = grammar::canonicalize(&ast, &self.deps.grammar).map_err(|e| SessionError::NotExecutable(e.0))?;
        self.emit(EventKind::CommandApproved, json!({"command": command}))?;
        let generator = self.deps.generator.clone();
        let usda_text = match generator.generate(&command) {
            Ok(t) => t,
            Err(e) => return Err(self.fail("approve_command", SessionError::GeneratorFailed(e.0))),
        };
        match self.ingest(&usda_text, Stage::Coarse) {
            Ok(()) => Ok(()),
            Err(e @ SessionError::Scene(_)) => Err(self.fail("approve_command", e)),
            Err(e) => Err(e),
        }
    }

    fn context_for(&self, query: &str) -> Vec<TaggedChunk> {
        let k = self.deps.config.k;
        let mut lists: Vec<(&str, Vec<ScoredChunk>)> = Vec::new();
        if let Some(c) = &self.coarse {
            lists.push((Stage::Coarse.tag(), c.index.query(query, k)));
        }
        if let Some(f) = &self.fine {
            lists.push((Stage::Fine.tag(), f.index.query(query, k)));
        }
        merge_ranked(&lists, k)
    }

    fn asset_context(&self, text: &str) -> Option<(SourceDecision, Option<TaggedChunk>)> {
        let catalog = self.deps.catalog.as_ref()?;
        let decision = catalog.select_source(text, &self.deps.config.selection_policy).ok()?;
        let chunk = match &decision.kind {
            SourceKind::Dataset { record } => {
                let code = fs::read_to_string(catalog.code_file(record)).unwrap_or_default();
                Some(TaggedChunk {
                    tag: "asset".into(),
                    chunk: Chunk {
                        id: 0,
                        source_doc: record.id.clone(),
                        start_offset: 0,
                        text: code,
                    },
                    score: decision.similarity,
                })
            }
            SourceKind::External { .. } => None,
        };
        Some((decision, chunk))
    }

    /// Plans an edit with the reasoning model, then turns the plan into code.
    /// The result waits for approval.
    pub fn submit_edit(&mut self, text: &str, selection: &[String]) -> Result<PendingEdit, SessionError> {
        self.require("submit_edit", &[Phase::EditingCoarse, Phase::EditingFine])?;
        let known = match &self.state.fine_db {
            Some(f) => &f.prim_paths,
            None => &self.state.coarse_db.as_ref().expect("editing phases have a scene").prim_paths,
        };
        if let Some(p) = selection.iter().find(|p| !known.contains(p)) {
            return Err(SessionError::UnknownSelectionPath(p.clone()));
        }
        if self.state.pending_edit.is_some() {
            self.emit(EventKind::EditRejected, json!({"reason": "superseded by a new edit"}))?;
        }
        if selection != self.state.selection.as_slice() {
            self.emit(EventKind::SelectionChanged, json!({"paths": selection}))?;
        }
        self.emit(EventKind::UserPrompt, json!({"text": text}))?;

        let mut context = self.context_for(text);
        let asset = self.asset_context(text);
        if let Some((_, Some(chunk))) = &asset {
            context.push(chunk.clone());
        }
        let result = self.plan_and_code(text, selection, &context, asset.as_ref().map(|(d, _)| d));
        match result {
            Ok(payload) => {
                self.emit(EventKind::EditProposed, payload)?;
                Ok(self.state.pending_edit.clone().expect("edit was just proposed"))
            }
            Err((e, response)) => {
                let extra = match response {
                    Some(r) => json!({"response": r}),
                    None => json!({}),
                };
                self.emit_error("submit_edit", &e, false, extra)?;
                Err(e)
            }
        }
    }

    /// The two model calls of an edit. Failures carry the response that
    /// could not be used, if any.
    fn plan_and_code(
        &self,
        text: &str,
        selection: &[String],
        context: &[TaggedChunk],
        decision: Option<&SourceDecision>,
    ) -> Result<Value, (SessionError, Option<String>)> {
        let deps = &self.deps;
        let plain = |e: SessionError| (e, None);
        let plan_bundle = prompt::build_cot_prompt(&deps.templates, text, context, selection, deps.config.budget)
            .map_err(|e| plain(e.into()))?;
        let (plan_req, plan_response) = self.complete(&deps.routing.planner, &plan_bundle).map_err(|e| plain(e.into()))?;
        let cot = prompt::parse_cot(&plan_response).map_err(|e| (e.into(), Some(plan_response.clone())))?;
        let code_bundle = prompt::build_code_prompt(&deps.templates, &cot.output, context, selection, deps.config.budget)
            .map_err(|e| plain(e.into()))?;
        let (code_req, code_response) = self.complete(&deps.routing.coder, &code_bundle).map_err(|e| plain(e.into()))?;
        let code = prompt::extract_code_block(&code_response);
        Ok(json!({
            "text": text,
            "selection": selection,
            "source_decision": decision,
            "plan_model": plan_req.model_id,
            "plan_fingerprint": plan_req.fingerprint(),
            "plan_messages": messages_json(&plan_req.messages),
            "plan_response": plan_response,
            "cot": cot,
            "code_model": code_req.model_id,
            "code_fingerprint": code_req.fingerprint(),
            "code_messages": messages_json(&code_req.messages),
            "code_response": code_response,
            "code": code,
        }))
    }

    /// In the coarse stage the edit is handed to the generator and the
    /// refined scene is ingested; in the fine stage the session is queued
    /// for rendering.
    pub fn approve_edit(&mut self) -> Result<(), SessionError> {
        if matches!(self.state.phase, Phase::Done | Phase::Failed) {
            return Err(SessionError::WrongPhase {
                op: "approve_edit",
                phase: self.state.phase,
            });
        }
        let Some(edit) = self.state.pending_edit.clone() else {
            return Err(SessionError::NoPendingEdit);
        };
        self.emit(EventKind::EditApproved, json!({"stage": edit.stage, "code": edit.code}))?;
        if edit.stage == Stage::Coarse {
            let coarse = self.coarse.as_ref().expect("coarse stage has a scene").rehydrated_usda()?;
            let generator = self.deps.generator.clone();
            let fine = match generator.refine(&coarse, &edit.code) {
                Ok(t) => t,
                Err(e) => return Err(self.fail("approve_edit", SessionError::GeneratorFailed(e.0))),
            };
            match self.ingest(&fine, Stage::Fine) {
                Ok(()) => {}
                Err(e @ SessionError::Scene(_)) => return Err(self.fail("approve_edit", e)),
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }

    pub fn reject_edit(&mut self) -> Result<(), SessionError> {
        if matches!(self.state.phase, Phase::Done | Phase::Failed) {
            return Err(SessionError::WrongPhase {
                op: "reject_edit",
                phase: self.state.phase,
            });
        }
        if self.state.pending_edit.is_none() {
            return Err(SessionError::NoPendingEdit);
        }
        self.emit(EventKind::EditRejected, json!({"reason": "rejected by user"}))?;
        Ok(())
    }

    /// Records the final render command and hands it to the generator.
    pub fn request_render(&mut self) -> Result<String, SessionError> {
        self.require("request_render", &[Phase::RenderQueued])?;
        let command = self.state.approved_command.clone().expect("render implies an approved command");
        let generator = self.deps.generator.clone();
        let record = match generator.render(&command) {
            Ok(r) => r,
            Err(e) => return Err(self.fail("request_render", SessionError::GeneratorFailed(e.0))),
        };
        self.emit(EventKind::RenderRequested, json!({"command": command, "record": record}))?;
        Ok(command)
    }
}

/// One step of a headless scripted session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ScriptStep {
    /// `responses` are the model replies this step consumes, in call order.
    Prompt {
        text: String,
        #[serde(default)]
        responses: Vec<String>,
        #[serde(default)]
        expect_error: Option<String>,
    },
    ApproveCommand {
        #[serde(default)]
        expect_error: Option<String>,
    },
    Edit {
        text: String,
        #[serde(default)]
        selection: Vec<String>,
        #[serde(default)]
        responses: Vec<String>,
        #[serde(default)]
        expect_error: Option<String>,
    },
    ApproveEdit {
        #[serde(default)]
        expect_error: Option<String>,
    },
    RejectEdit {
        #[serde(default)]
        expect_error: Option<String>,
    },
    Render {
        #[serde(default)]
        expect_error: Option<String>,
    },
}

impl ScriptStep {
    fn expect_error(&self) -> Option<&str> {
        match self {
            ScriptStep::Prompt { expect_error, .. }
            | ScriptStep::ApproveCommand { expect_error }
            | ScriptStep::Edit { expect_error, .. }
            | ScriptStep::ApproveEdit { expect_error }
            | ScriptStep::RejectEdit { expect_error }
            | ScriptStep::Render { expect_error } => expect_error.as_deref(),
        }
    }

    fn responses(&self) -> &[String] {
        match self {
            ScriptStep::Prompt { responses, .. } | ScriptStep::Edit { responses, .. } => responses,
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Script {
    pub session_id: String,
    pub steps: Vec<ScriptStep>,
}

impl Script {
    /// Every scripted model reply in the order the session will ask for them.
    pub fn responses(&self) -> Vec<String> {
        self.steps.iter().flat_map(|s| s.responses().iter().cloned()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepOutcome {
    pub step: usize,
    pub error: Option<String>,
    pub expected_error: Option<String>,
    pub phase: Phase,
}

impl StepOutcome {
    pub fn as_expected(&self) -> bool {
        self.error == self.expected_error
    }
}

/// Runs every step against a fresh session and reports what each returned.
pub fn run_script(script: &Script, deps: Arc<SessionDeps>) -> (Session, Vec<StepOutcome>) {
    let mut session = Session::new(&script.session_id, deps);
    let mut outcomes = Vec::new();
    for (i, step) in script.steps.iter().enumerate() {
        let result = match step {
            ScriptStep::Prompt { text, .. } => session.submit_prompt(text).map(|_| ()),
            ScriptStep::ApproveCommand { .. } => session.approve_command(),
            ScriptStep::Edit { text, selection, .. } => session.submit_edit(text, selection).map(|_| ()),
            ScriptStep::ApproveEdit { .. } => session.approve_edit(),
            ScriptStep::RejectEdit { .. } => session.reject_edit(),
            ScriptStep::Render { .. } => session.request_render().map(|_| ()),
        };
        outcomes.push(StepOutcome {
            step: i,
            error: result.err().map(|e| e.code().to_string()),
            expected_error: step.expect_error().map(str::to_string),
            phase: session.state().phase,
        });
    }
    (session, outcomes)
}

/// Runs `script` once against its own scripted replies and returns the
/// recorded request-to-response store, so later runs can use a replay
/// backend.
pub fn record_script<F>(script: &Script, make_deps: F) -> ReplayStore
where
    F: Fn(Arc<dyn LlmBackend>) -> SessionDeps,
{
    let recorder = Arc::new(Recorder::new(ScriptedBackend::new(script.responses())));
    let backend: Arc<dyn LlmBackend> = recorder.clone();
    let _ = run_script(script, Arc::new(make_deps(backend)));
    recorder.store()
}
