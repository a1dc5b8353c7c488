//! Application configuration, read from a TOML file. Every table and key is
//! optional.
//!
//! ```toml
//! [backend]
//! kind = "replay"
//! replay_store = "fixtures/store.json"
//!
//! [models]
//! codex = "claude-3-5-sonnet"
//!
//! [generator]
//! mode = "simulate"
//! seed = 7
//! ```

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError};
use crate::grammar::{Grammar, GrammarError};
use crate::llm::{BackendConfig, LlmBackend, LlmError, ModelRouting};
use crate::prompt::{self, FewShotPair, PromptError, Templates};
use crate::retrieval::{load_corpus_dir, IndexParams, RetrievalError, RetrievalIndex};
use crate::session::{Clock, LiveGenerator, LogicalClock, SceneGenerator, SessionConfig, SessionDeps, SimulatedGenerator, SystemClock};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Prompt(#[from] PromptError),
    #[error(transparent)]
    Retrieval(#[from] RetrievalError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Llm(#[from] LlmError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorMode {
    #[default]
    Simulate,
    Live,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GeneratorConfig {
    pub mode: GeneratorMode,
    pub seed: u64,
    pub workdir: PathBuf,
    pub scene_file: PathBuf,
    pub refine_args: Vec<String>,
    pub executable_override: Option<String>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            mode: GeneratorMode::Simulate,
            seed: 0,
            workdir: PathBuf::from("."),
            scene_file: PathBuf::from("scene.usda"),
            refine_args: Vec::new(),
            executable_override: None,
        }
    }
}

impl GeneratorConfig {
    pub fn build(&self) -> Arc<dyn SceneGenerator> {
        match self.mode {
            GeneratorMode::Simulate => Arc::new(SimulatedGenerator { seed: self.seed }),
            GeneratorMode::Live => Arc::new(LiveGenerator {
                workdir: self.workdir.clone(),
                scene_file: self.scene_file.clone(),
                refine_args: self.refine_args.clone(),
                executable_override: self.executable_override.clone(),
            }),
        }
    }
}

/// Locations of swappable data. Unset entries use the bundled copies.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PathsConfig {
    pub sessions_dir: Option<PathBuf>,
    pub grammar: Option<PathBuf>,
    pub templates_dir: Option<PathBuf>,
    pub few_shots: Option<PathBuf>,
    /// Directory of documentation for command retrieval.
    pub docs_dir: Option<PathBuf>,
    pub catalog_manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ServerConfig {
    pub bind: String,
    /// When set, mutating requests need `Authorization: Bearer <token>`.
    pub token: Option<String>,
    /// Use a logical clock for journal timestamps.
    pub deterministic_clock: bool,
}

impl Default for ServerConfig {
    fn default() -> Self {
        ServerConfig {
            bind: "127.0.0.1:8080".into(),
            token: None,
            deterministic_clock: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AppConfig {
    pub backend: BackendConfig,
    pub models: ModelRouting,
    pub retrieval: IndexParams,
    pub session: SessionConfig,
    pub generator: GeneratorConfig,
    pub paths: PathsConfig,
    pub server: ServerConfig,
    /// Consult the asset catalog when planning edits.
    pub use_catalog: bool,
}

/// Loaded grammar, prompts and documentation index.
pub struct Resources {
    pub grammar: Arc<Grammar>,
    pub templates: Arc<Templates>,
    pub few_shots: Arc<Vec<FewShotPair>>,
    pub docs: Arc<RetrievalIndex>,
    pub catalog: Option<Arc<Catalog>>,
}

impl AppConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn resources(&self) -> Result<Resources, ConfigError> {
        let grammar = match &self.paths.grammar {
            Some(p) => Grammar::load(p)?,
            None => Grammar::bundled(),
        };
        let templates = match &self.paths.templates_dir {
            Some(d) => Templates::load_dir(d)?,
            None => Templates::bundled(),
        };
        let few_shots = match &self.paths.few_shots {
            Some(p) => prompt::load_few_shots(&std::fs::read_to_string(p)?, &grammar)?,
            None => prompt::bundled_few_shots(&grammar),
        };
        let docs = match &self.paths.docs_dir {
            Some(d) => load_corpus_dir(d)?,
            None => grammar.reference_docs(),
        };
        let docs = RetrievalIndex::build(&docs, self.retrieval)?;
        let catalog = match (&self.paths.catalog_manifest, self.use_catalog) {
            (Some(p), _) => Some(Arc::new(Catalog::load(p)?)),
            (None, true) => Some(Arc::new(Catalog::bundled())),
            (None, false) => None,
        };
        Ok(Resources {
            grammar: Arc::new(grammar),
            templates: Arc::new(templates),
            few_shots: Arc::new(few_shots),
            docs: Arc::new(docs),
            catalog,
        })
    }

    pub fn clock(&self) -> Arc<dyn Clock> {
        if self.server.deterministic_clock {
            Arc::new(LogicalClock::default())
        } else {
            Arc::new(SystemClock)
        }
    }

    /// Session dependencies with the given backend and clock.
    pub fn session_deps(&self, res: &Resources, backend: Arc<dyn LlmBackend>, clock: Arc<dyn Clock>) -> SessionDeps {
        SessionDeps {
            grammar: res.grammar.clone(),
            templates: res.templates.clone(),
            few_shots: res.few_shots.clone(),
            docs: res.docs.clone(),
            backend,
            routing: self.models.clone(),
            generator: self.generator.build(),
            catalog: res.catalog.clone(),
            clock,
            config: self.session.clone(),
        }
    }
}
