//! Procedural asset catalog: a JSON-lines manifest of code-format assets with
//! lexical search, ingestion and a seeded choice between a catalog asset and
//! an external text-to-3D model.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use statrs::distribution::{ContinuousCDF, Normal};
use thiserror::Error;

use crate::retrieval::{IndexParams, RetrievalIndex};

pub const DEFAULT_LICENSE: &str = "CC-BY-4.0";
pub const MANIFEST_FILE: &str = "manifest.jsonl";

/// Path of the manifest shipped with this crate.
pub fn bundled_manifest_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/assets").join(MANIFEST_FILE)
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: unknown category `{category}`")]
    BadCategory { line: usize, category: String },
    #[error("record `{id}`: code file {path} does not exist")]
    MissingCodeFile { id: String, path: PathBuf },
    #[error("duplicate asset id `{0}`")]
    DuplicateId(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot read {path}: {source}")]
    UnreadableFile {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid metadata: {0}")]
    InvalidMetadata(String),
    #[error("invalid selection policy: {0}")]
    InvalidPolicy(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    Indoors,
    Outdoors,
    Terrain,
    Rocks,
    Plants,
    Trees,
    Weather,
    Foods,
    Scattering,
    Materials,
}

impl Category {
    pub const ALL: [Category; 10] = [
        Category::Indoors,
        Category::Outdoors,
        Category::Terrain,
        Category::Rocks,
        Category::Plants,
        Category::Trees,
        Category::Weather,
        Category::Foods,
        Category::Scattering,
        Category::Materials,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Indoors => "Indoors",
            Category::Outdoors => "Outdoors",
            Category::Terrain => "Terrain",
            Category::Rocks => "Rocks",
            Category::Plants => "Plants",
            Category::Trees => "Trees",
            Category::Weather => "Weather",
            Category::Foods => "Foods",
            Category::Scattering => "Scattering",
            Category::Materials => "Materials",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssetRecord {
    pub id: String,
    pub name: String,
    pub category: Category,
    pub description: String,
    /// Relative to the manifest's directory.
    pub code_path: PathBuf,
    #[serde(default = "default_license")]
    pub license: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_url: Option<String>,
}

fn default_license() -> String {
    DEFAULT_LICENSE.to_string()
}

impl AssetRecord {
    fn search_text(&self) -> String {
        format!("{} {} {}", self.name, self.description, self.category)
    }
}

/// Loaded manifest plus a search index over its records.
#[derive(Debug, Clone)]
pub struct Catalog {
    root: PathBuf,
    records: Vec<AssetRecord>,
    /// Record positions sorted by id; chunk `i` of the index is `records[order[i]]`.
    order: Vec<usize>,
    index: RetrievalIndex,
}

impl PartialEq for Catalog {
    fn eq(&self, other: &Self) -> bool {
        self.records == other.records
    }
}

fn search_params() -> IndexParams {
    IndexParams {
        chunk_size: usize::MAX,
        ..IndexParams::default()
    }
}

impl Catalog {
    /// Builds a catalog without checking code files.
    pub fn from_records(root: impl Into<PathBuf>, records: Vec<AssetRecord>) -> Result<Self, CatalogError> {
        let mut seen = HashSet::new();
        for r in &records {
            if !seen.insert(r.id.as_str()) {
                return Err(CatalogError::DuplicateId(r.id.clone()));
            }
        }
        let mut order: Vec<usize> = (0..records.len()).collect();
        order.sort_by(|&a, &b| records[a].id.cmp(&records[b].id));
        let docs: Vec<(String, String)> = order
            .iter()
            .map(|&i| (records[i].id.clone(), records[i].search_text()))
            .collect();
        let index = RetrievalIndex::build(&docs, search_params()).expect("chunk size is positive");
        Ok(Catalog {
            root: root.into(),
            records,
            order,
            index,
        })
    }

    pub fn load(manifest: &Path) -> Result<Self, CatalogError> {
        let text = fs::read_to_string(manifest).map_err(|source| CatalogError::UnreadableFile {
            path: manifest.to_path_buf(),
            source,
        })?;
        let root = manifest.parent().unwrap_or(Path::new(".")).to_path_buf();
        let records = parse_manifest(&text)?;
        for r in &records {
            let path = root.join(&r.code_path);
            if !path.is_file() {
                return Err(CatalogError::MissingCodeFile { id: r.id.clone(), path });
            }
        }
        Self::from_records(root, records)
    }

    pub fn bundled() -> Self {
        Self::load(&bundled_manifest_path()).expect("bundled manifest is valid")
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn records(&self) -> &[AssetRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&AssetRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn code_file(&self, record: &AssetRecord) -> PathBuf {
        self.root.join(&record.code_path)
    }

    /// Record count for every category, zero counts included.
    pub fn counts(&self) -> BTreeMap<Category, usize> {
        let mut out: BTreeMap<Category, usize> = Category::ALL.iter().map(|&c| (c, 0)).collect();
        for r in &self.records {
            *out.get_mut(&r.category).unwrap() += 1;
        }
        out
    }

    pub fn to_manifest(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&serde_json::to_string(r).expect("record serializes"));
            s.push('\n');
        }
        s
    }

    /// Writes the manifest atomically. Code files are not touched.
    pub fn save(&self, manifest: &Path) -> Result<(), CatalogError> {
        write_atomic(manifest, self.to_manifest().as_bytes())
    }

    pub fn index(&self) -> &RetrievalIndex {
        &self.index
    }

    /// Top `k` records by lexical relevance over name, description and
    /// category. Ties go to the smaller id.
    pub fn search(&self, query: &str, k: usize) -> Vec<(&AssetRecord, f64)> {
        self.index
            .query(query, k)
            .into_iter()
            .map(|h| (&self.records[self.order[h.chunk.id as usize]], h.score))
            .collect()
    }

    /// Best-match score divided by the query's self-score, clamped to [0, 1].
    pub fn similarity(&self, query: &str) -> (Option<&AssetRecord>, f64) {
        let Some((best, score)) = self.search(query, 1).into_iter().next() else {
            return (None, 0.0);
        };
        let denom = self.index.self_score(query);
        let s = if denom > 0.0 { (score / denom).clamp(0.0, 1.0) } else { 0.0 };
        (Some(best), s)
    }

    pub fn select_source(&self, query: &str, policy: &SelectionPolicy) -> Result<SourceDecision, CatalogError> {
        policy.check()?;
        let draw = policy.draw(query);
        let (best, similarity) = self.similarity(query);
        let Some(best) = best.filter(|_| !self.is_empty()) else {
            return Ok(SourceDecision {
                kind: SourceKind::External { prompt: query.to_string() },
                similarity,
                p_dataset: 0.0,
                draw,
            });
        };
        let p_dataset = policy.p_dataset(similarity);
        let kind = if draw < p_dataset {
            SourceKind::Dataset { record: best.clone() }
        } else {
            SourceKind::External { prompt: query.to_string() }
        };
        Ok(SourceDecision {
            kind,
            similarity,
            p_dataset,
            draw,
        })
    }
}

fn parse_manifest(text: &str) -> Result<Vec<AssetRecord>, CatalogError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut value: serde_json::Value = serde_json::from_str(line).map_err(|e| CatalogError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if let Some(c) = value.get("category").and_then(|c| c.as_str()) {
            let cat = Category::from_str(c).map_err(|category| CatalogError::BadCategory { line: line_no, category })?;
            value["category"] = serde_json::Value::String(cat.as_str().to_string());
        }
        let record: AssetRecord = serde_json::from_value(value).map_err(|e| CatalogError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        out.push(record);
    }
    Ok(out)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CatalogError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp.{}", std::process::id()));
    {
        let mut f = File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Lowercase ASCII slug; runs of other characters become one dash.
pub fn slugify(name: &str) -> String {
    let mut s = String::new();
    for ch in name.chars() {
        if ch.is_ascii_alphanumeric() {
            s.push(ch.to_ascii_lowercase());
        } else if !s.ends_with('-') {
            s.push('-');
        }
    }
    let s = s.trim_matches('-').to_string();
    if s.is_empty() { "asset".to_string() } else { s }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewAsset {
    pub name: String,
    pub category: String,
    pub description: String,
    #[serde(default)]
    pub license: Option<String>,
    #[serde(default)]
    pub source_url: Option<String>,
}

/// Copies `code_file` into the catalog and appends a record to `manifest`.
/// Concurrent ingests into the same manifest are serialized by a lock file.
pub fn ingest_asset(manifest: &Path, code_file: &Path, meta: &NewAsset) -> Result<AssetRecord, CatalogError> {
    if meta.name.trim().is_empty() || meta.description.trim().is_empty() {
        return Err(CatalogError::InvalidMetadata("name and description are required".into()));
    }
    let category = Category::from_str(&meta.category).map_err(|category| CatalogError::BadCategory { line: 0, category })?;
    let code = fs::read(code_file).map_err(|source| CatalogError::UnreadableFile {
        path: code_file.to_path_buf(),
        source,
    })?;

    let root = manifest.parent().unwrap_or(Path::new(".")).to_path_buf();
    let lock_path = root.join(format!(
        "{}.lock",
        manifest.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
    ));
    let lock = OpenOptions::new().create(true).truncate(false).write(true).open(&lock_path)?;
    lock.lock()?;

    let mut records = if manifest.exists() {
        parse_manifest(&fs::read_to_string(manifest)?)?
    } else {
        Vec::new()
    };
    let taken: HashSet<&str> = records.iter().map(|r| r.id.as_str()).collect();
    let base = slugify(&meta.name);
    let id = std::iter::once(base.clone())
        .chain((2..).map(|n| format!("{base}-{n}")))
        .find(|c| !taken.contains(c.as_str()))
        .unwrap();

    let ext = code_file.extension().map(|e| e.to_string_lossy().into_owned()).unwrap_or_else(|| "py".into());
    let rel = PathBuf::from("code").join(format!("{id}.{ext}"));
    fs::create_dir_all(root.join("code"))?;
    write_atomic(&root.join(&rel), &code)?;

    let record = AssetRecord {
        id,
        name: meta.name.clone(),
        category,
        description: meta.description.clone(),
        code_path: rel,
        license: meta.license.clone().unwrap_or_else(default_license),
        source_url: meta.source_url.clone(),
    };
    records.push(record.clone());
    let catalog = Catalog::from_records(root, records)?;
    catalog.save(manifest)?;
    lock.unlock()?;
    Ok(record)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SelectionPolicy {
    pub mu: f64,
    pub sigma: f64,
    pub seed: u64,
}

impl Default for SelectionPolicy {
    fn default() -> Self {
        SelectionPolicy {
            mu: 0.5,
            sigma: 0.15,
            seed: 0,
        }
    }
}

impl SelectionPolicy {
    pub fn check(&self) -> Result<(), CatalogError> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(CatalogError::InvalidPolicy(format!("sigma must be positive, got {}", self.sigma)));
        }
        if !self.mu.is_finite() {
            return Err(CatalogError::InvalidPolicy("mu must be finite".into()));
        }
        Ok(())
    }

    /// Standard normal CDF of `(s - mu) / sigma`.
    pub fn p_dataset(&self, s: f64) -> f64 {
        let n = Normal::new(0.0, 1.0).unwrap();
        n.cdf((s - self.mu) / self.sigma)
    }

    /// Uniform draw in [0, 1) seeded from the policy seed and the query.
    pub fn draw(&self, query: &str) -> f64 {
        let digest = Sha256::digest(query.as_bytes());
        let h = u64::from_le_bytes(digest[..8].try_into().unwrap());
        ChaCha20Rng::seed_from_u64(self.seed ^ h).random::<f64>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceKind {
    Dataset { record: AssetRecord },
    External { prompt: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceDecision {
    #[serde(flatten)]
    pub kind: SourceKind,
    pub similarity: f64,
    pub p_dataset: f64,
    pub draw: f64,
}

impl SourceDecision {
    pub fn is_dataset(&self) -> bool {
        matches!(self.kind, SourceKind::Dataset { .. })
    }
}

/// Placeholder mesh returned by a text-to-3D model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshDescriptor {
    pub prompt: String,
    pub uri: String,
    pub vertex_count: u32,
}

pub trait TextTo3d: Send + Sync {
    fn generate(&self, prompt: &str) -> Result<MeshDescriptor, CatalogError>;
}

/// Offline stand-in that derives a descriptor from the prompt hash.
#[derive(Debug, Clone, Copy, Default)]
pub struct SimulatedTextTo3d;

impl TextTo3d for SimulatedTextTo3d {
    fn generate(&self, prompt: &str) -> Result<MeshDescriptor, CatalogError> {
        let digest = hex::encode(Sha256::digest(prompt.as_bytes()));
        Ok(MeshDescriptor {
            prompt: prompt.to_string(),
            uri: format!("sim-mesh://{}", &digest[..16]),
            vertex_count: 1024 + u32::from_str_radix(&digest[..4], 16).unwrap() % 4096,
        })
    }
}
