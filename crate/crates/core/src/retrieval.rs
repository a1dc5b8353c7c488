//! Chunked lexical retrieval over scene dictionaries and codebase text.
//!
//! Documents are split into non-overlapping runs of whitespace-delimited
//! tokens. Each chunk is scored independently; the default scorer is Okapi
//! BM25 over lowercased alphanumeric terms.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const DEFAULT_CHUNK_SIZE: usize = 256;
pub const INDEX_FORMAT: &str = "scene-copilot-index";
pub const INDEX_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum RetrievalError {
    #[error("chunk size must be at least 1, got {0}")]
    InvalidChunkSize(usize),
    #[error("index file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chunk {
    pub id: u32,
    pub source_doc: String,
    /// Offset of the first character, counted in `char`s.
    pub start_offset: usize,
    pub text: String,
}

/// Splits `doc` into chunks of `chunk_size` whitespace-delimited tokens.
///
/// Each chunk runs from its first token up to the first token of the next
/// chunk, so leading whitespace goes to the first chunk and trailing
/// whitespace to the last. Concatenating the texts gives back `doc`.
pub fn chunk_document(
    source_doc: &str,
    doc: &str,
    chunk_size: usize,
) -> Result<Vec<Chunk>, RetrievalError> {
    if chunk_size < 1 {
        return Err(RetrievalError::InvalidChunkSize(chunk_size));
    }
    if doc.is_empty() {
        return Ok(Vec::new());
    }
    // Byte offsets where a token starts.
    let mut starts = Vec::new();
    let mut prev_ws = true;
    for (i, c) in doc.char_indices() {
        let ws = c.is_whitespace();
        if prev_ws && !ws {
            starts.push(i);
        }
        prev_ws = ws;
    }
    let mut cuts: Vec<usize> = starts.iter().step_by(chunk_size).copied().collect();
    if cuts.is_empty() {
        cuts.push(0);
    }
    cuts[0] = 0;
    cuts.push(doc.len());

    let mut chunks = Vec::with_capacity(cuts.len() - 1);
    let mut char_offset = 0;
    for (id, w) in cuts.windows(2).enumerate() {
        let text = &doc[w[0]..w[1]];
        chunks.push(Chunk {
            id: id as u32,
            source_doc: source_doc.to_string(),
            start_offset: char_offset,
            text: text.to_string(),
        });
        char_offset += text.chars().count();
    }
    Ok(chunks)
}

/// Lowercased alphanumeric runs; everything else separates terms.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Distinct terms in first-appearance order.
pub fn unique_terms(text: &str) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    tokenize(text)
        .into_iter()
        .filter(|t| seen.insert(t.clone()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bm25Params {
    pub k1: f64,
    pub b: f64,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Bm25Params { k1: 1.2, b: 0.75 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScorerKind {
    Bm25(Bm25Params),
}

impl Default for ScorerKind {
    fn default() -> Self {
        ScorerKind::Bm25(Bm25Params::default())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IndexParams {
    pub chunk_size: usize,
    pub scorer: ScorerKind,
}

impl Default for IndexParams {
    fn default() -> Self {
        IndexParams {
            chunk_size: DEFAULT_CHUNK_SIZE,
            scorer: ScorerKind::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermEntry {
    /// Number of chunks containing the term.
    pub df: u32,
    /// `(chunk id, term frequency)` in ascending chunk id.
    pub postings: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredChunk {
    pub chunk: Chunk,
    pub score: f64,
}

/// Immutable chunk store with per-term statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetrievalIndex {
    params: IndexParams,
    chunks: Vec<Chunk>,
    /// Term count of every chunk, indexed by chunk id.
    chunk_lengths: Vec<u32>,
    terms: BTreeMap<String, TermEntry>,
}

impl RetrievalIndex {
    /// Chunks every document and indexes the chunks. Chunk ids are assigned
    /// consecutively across documents in input order.
    pub fn build(docs: &[(String, String)], params: IndexParams) -> Result<Self, RetrievalError> {
        let mut chunks = Vec::new();
        for (name, text) in docs {
            for mut c in chunk_document(name, text, params.chunk_size)? {
                c.id = chunks.len() as u32;
                chunks.push(c);
            }
        }
        Ok(Self::from_chunks(chunks, params))
    }

    fn from_chunks(chunks: Vec<Chunk>, params: IndexParams) -> Self {
        let mut terms: BTreeMap<String, TermEntry> = BTreeMap::new();
        let mut chunk_lengths = Vec::with_capacity(chunks.len());
        for c in &chunks {
            let toks = tokenize(&c.text);
            chunk_lengths.push(toks.len() as u32);
            let mut tf: BTreeMap<String, u32> = BTreeMap::new();
            for t in toks {
                *tf.entry(t).or_default() += 1;
            }
            for (t, n) in tf {
                let e = terms.entry(t).or_insert(TermEntry {
                    df: 0,
                    postings: Vec::new(),
                });
                e.df += 1;
                e.postings.push((c.id, n));
            }
        }
        RetrievalIndex {
            params,
            chunks,
            chunk_lengths,
            terms,
        }
    }

    pub fn params(&self) -> &IndexParams {
        &self.params
    }

    pub fn chunks(&self) -> &[Chunk] {
        &self.chunks
    }

    pub fn len(&self) -> usize {
        self.chunks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }

    pub fn chunk(&self, id: u32) -> Option<&Chunk> {
        self.chunks.get(id as usize)
    }

    pub fn chunk_length(&self, id: u32) -> u32 {
        self.chunk_lengths[id as usize]
    }

    pub fn document_frequency(&self, term: &str) -> u32 {
        self.terms.get(term).map_or(0, |e| e.df)
    }

    pub fn term(&self, term: &str) -> Option<&TermEntry> {
        self.terms.get(term)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &TermEntry)> {
        self.terms.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn average_chunk_length(&self) -> f64 {
        if self.chunks.is_empty() {
            return 0.0;
        }
        let total: u64 = self.chunk_lengths.iter().map(|&n| n as u64).sum();
        total as f64 / self.chunks.len() as f64
    }

    fn scorer(&self) -> Box<dyn RelevanceScorer> {
        match self.params.scorer {
            ScorerKind::Bm25(p) => Box::new(Bm25Scorer(p)),
        }
    }

    /// Top `k` chunks with a positive score, by descending score then
    /// ascending chunk id.
    pub fn query(&self, q: &str, k: usize) -> Vec<ScoredChunk> {
        self.query_with(self.scorer().as_ref(), q, k)
    }

    pub fn query_with(&self, scorer: &dyn RelevanceScorer, q: &str, k: usize) -> Vec<ScoredChunk> {
        if k == 0 || self.chunks.is_empty() {
            return Vec::new();
        }
        let mut hits: Vec<(u32, f64)> = scorer
            .score(self, &unique_terms(q))
            .into_iter()
            .filter(|&(_, s)| s > 0.0)
            .collect();
        hits.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        hits.truncate(k);
        hits.into_iter()
            .map(|(id, score)| ScoredChunk {
                chunk: self.chunks[id as usize].clone(),
                score,
            })
            .collect()
    }

    /// Score of `q` against itself treated as an extra chunk, using this
    /// index's term statistics.
    pub fn self_score(&self, q: &str) -> f64 {
        self.scorer().self_score(self, q)
    }

    /// Serialized index file: versioned header, chunk table and term table.
    pub fn to_file_bytes(&self) -> Vec<u8> {
        let file = IndexFile {
            format: INDEX_FORMAT.to_string(),
            version: INDEX_VERSION,
            index: self.clone(),
        };
        let mut bytes = serde_json::to_vec(&file).expect("index serializes");
        bytes.push(b'\n');
        bytes
    }

    pub fn from_file_bytes(bytes: &[u8]) -> Result<Self, RetrievalError> {
        let file: IndexFile =
            serde_json::from_slice(bytes).map_err(|e| RetrievalError::Format(e.to_string()))?;
        if file.format != INDEX_FORMAT {
            return Err(RetrievalError::Format(format!("unexpected format `{}`", file.format)));
        }
        if file.version != INDEX_VERSION {
            return Err(RetrievalError::Format(format!("unsupported version {}", file.version)));
        }
        Ok(file.index)
    }

    pub fn save(&self, path: &Path) -> Result<(), RetrievalError> {
        std::fs::write(path, self.to_file_bytes())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, RetrievalError> {
        Self::from_file_bytes(&std::fs::read(path)?)
    }

    /// Hex SHA-256 of the serialized index.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.to_file_bytes()))
    }
}

#[derive(Serialize, Deserialize)]
struct IndexFile {
    format: String,
    version: u32,
    index: RetrievalIndex,
}

/// Scores chunks of an index for a list of distinct query terms.
pub trait RelevanceScorer: Send + Sync {
    /// `(chunk id, score)` for every chunk that could be relevant.
    fn score(&self, index: &RetrievalIndex, terms: &[String]) -> Vec<(u32, f64)>;

    fn self_score(&self, index: &RetrievalIndex, q: &str) -> f64;
}

#[derive(Debug, Clone, Copy)]
pub struct Bm25Scorer(pub Bm25Params);

impl Bm25Scorer {
    pub fn idf(n_chunks: usize, df: u32) -> f64 {
        let n = n_chunks as f64;
        let df = df as f64;
        (1.0 + (n - df + 0.5) / (df + 0.5)).ln()
    }

    fn term_weight(&self, idf: f64, tf: f64, len: f64, avg_len: f64) -> f64 {
        let Bm25Params { k1, b } = self.0;
        let norm = if avg_len > 0.0 { len / avg_len } else { 0.0 };
        idf * (tf * (k1 + 1.0)) / (tf + k1 * (1.0 - b + b * norm))
    }
}

impl RelevanceScorer for Bm25Scorer {
    fn score(&self, index: &RetrievalIndex, terms: &[String]) -> Vec<(u32, f64)> {
        let avg = index.average_chunk_length();
        let mut acc: HashMap<u32, f64> = HashMap::new();
        for t in terms {
            let Some(entry) = index.term(t) else { continue };
            let idf = Self::idf(index.len(), entry.df);
            for &(id, tf) in &entry.postings {
                let w = self.term_weight(idf, tf as f64, index.chunk_length(id) as f64, avg);
                *acc.entry(id).or_insert(0.0) += w;
            }
        }
        acc.into_iter().collect()
    }

    fn self_score(&self, index: &RetrievalIndex, q: &str) -> f64 {
        let toks = tokenize(q);
        let len = toks.len() as f64;
        let avg = index.average_chunk_length();
        let mut total = 0.0;
        for t in unique_terms(q) {
            let tf = toks.iter().filter(|x| **x == t).count() as f64;
            let idf = Self::idf(index.len(), index.document_frequency(&t));
            total += self.term_weight(idf, tf, len, avg);
        }
        total
    }
}

/// A ranked hit labelled with the database it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedChunk {
    pub tag: String,
    pub chunk: Chunk,
    pub score: f64,
}

/// Interleaves several ranked lists by score. Ties go to the earlier list,
/// then to the lower chunk id.
pub fn merge_ranked(lists: &[(&str, Vec<ScoredChunk>)], k: usize) -> Vec<TaggedChunk> {
    let mut all: Vec<(usize, TaggedChunk)> = lists
        .iter()
        .enumerate()
        .flat_map(|(i, (tag, hits))| {
            hits.iter().map(move |h| {
                (
                    i,
                    TaggedChunk {
                        tag: tag.to_string(),
                        chunk: h.chunk.clone(),
                        score: h.score,
                    },
                )
            })
        })
        .collect();
    all.sort_by(|(ia, a), (ib, b)| {
        b.score
            .total_cmp(&a.score)
            .then(ia.cmp(ib))
            .then(a.chunk.id.cmp(&b.chunk.id))
    });
    all.into_iter().take(k).map(|(_, t)| t).collect()
}

/// Reads every UTF-8 file under `dir` as a document named by its relative
/// path. Files that are not valid UTF-8 are skipped.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<(String, String)>, RetrievalError> {
    let mut docs = Vec::new();
    for entry in walkdir::WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| RetrievalError::Format(e.to_string()))?;
        if !entry.file_type().is_file() {
            continue;
        }
        let bytes = std::fs::read(entry.path())?;
        let Ok(text) = String::from_utf8(bytes) else { continue };
        let name = entry
            .path()
            .strip_prefix(dir)
            .unwrap_or(entry.path())
            .to_string_lossy()
            .replace('\\', "/");
        docs.push((name, text));
    }
    Ok(docs)
}
