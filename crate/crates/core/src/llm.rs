//! Chat-completion client with interchangeable backends.
//!
//! [`HttpBackend`] talks to a chat-completions style endpoint. The
//! [`ReplayBackend`] answers from a [`ReplayStore`] keyed by request
//! fingerprint and never touches the network, which is what tests and CI use.

use std::collections::{BTreeMap, VecDeque};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LlmError {
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("request timed out")]
    Timeout,
    #[error("rate limited by backend")]
    RateLimited,
    #[error("malformed response: {0}")]
    MalformedResponse(String),
    #[error("backend returned HTTP {status}: {body}")]
    Http { status: u16, body: String },
    #[error("transport error: {0}")]
    Transport(String),
    #[error("no recorded response for fingerprint {fingerprint}")]
    ReplayMiss { fingerprint: String },
    #[error("fingerprint {fingerprint} already recorded with a different response")]
    FingerprintConflict { fingerprint: String },
    #[error("scripted backend has no responses left")]
    ScriptExhausted,
    #[error("api key variable `{0}` is not set")]
    MissingApiKey(String),
    #[error("replay store: {0}")]
    Store(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl LlmError {
    pub fn code(&self) -> &'static str {
        match self {
            LlmError::InvalidRequest(_) => "InvalidRequest",
            LlmError::Timeout => "Timeout",
            LlmError::RateLimited => "RateLimited",
            LlmError::MalformedResponse(_) => "MalformedResponse",
            LlmError::Http { .. } => "Http",
            LlmError::Transport(_) => "Transport",
            LlmError::ReplayMiss { .. } => "ReplayMiss",
            LlmError::FingerprintConflict { .. } => "FingerprintConflict",
            LlmError::ScriptExhausted => "ScriptExhausted",
            LlmError::MissingApiKey(_) => "MissingApiKey",
            LlmError::Store(_) => "Store",
            LlmError::Io(_) => "Io",
        }
    }

    fn is_transient(&self) -> bool {
        matches!(self, LlmError::Timeout | LlmError::RateLimited)
            || matches!(self, LlmError::Http { status, .. } if *status >= 500)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    User,
    Assistant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub role: Role,
    pub content: String,
}

impl Message {
    pub fn system(content: impl Into<String>) -> Self {
        Message {
            role: Role::System,
            content: content.into(),
        }
    }

    pub fn user(content: impl Into<String>) -> Self {
        Message {
            role: Role::User,
            content: content.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionRequest {
    pub model_id: String,
    pub messages: Vec<Message>,
    pub temperature: f64,
    pub max_tokens: u32,
}

#[derive(Serialize)]
struct FingerprintInput<'a> {
    model: &'a str,
    messages: &'a [Message],
    temperature: f64,
}

impl CompletionRequest {
    /// Temperature 0, 4096 max tokens.
    pub fn new(model_id: impl Into<String>, messages: Vec<Message>) -> Self {
        CompletionRequest {
            model_id: model_id.into(),
            messages,
            temperature: 0.0,
            max_tokens: 4096,
        }
    }

    pub fn check(&self) -> Result<(), LlmError> {
        if self.messages.is_empty() {
            return Err(LlmError::InvalidRequest("messages must not be empty".into()));
        }
        if !(0.0..=2.0).contains(&self.temperature) {
            return Err(LlmError::InvalidRequest(format!(
                "temperature {} outside [0, 2]",
                self.temperature
            )));
        }
        Ok(())
    }

    /// Hex SHA-256 over the canonical JSON of model, messages and temperature.
    pub fn fingerprint(&self) -> String {
        let canonical = serde_json::to_vec(&FingerprintInput {
            model: &self.model_id,
            messages: &self.messages,
            temperature: self.temperature,
        })
        .expect("request serializes");
        hex::encode(Sha256::digest(&canonical))
    }

    /// Text of the last user message.
    pub fn last_user(&self) -> Option<&str> {
        self.messages
            .iter()
            .rev()
            .find(|m| m.role == Role::User)
            .map(|m| m.content.as_str())
    }
}

pub trait LlmBackend: Send + Sync {
    fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError>;
}

impl<F> LlmBackend for F
where
    F: Fn(&CompletionRequest) -> Result<String, LlmError> + Send + Sync,
{
    fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        self(request)
    }
}

impl<B: LlmBackend + ?Sized> LlmBackend for Arc<B> {
    fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        (**self).complete(request)
    }
}

/// Recorded responses keyed by request fingerprint.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReplayStore {
    entries: BTreeMap<String, String>,
}

impl ReplayStore {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, fingerprint: &str) -> Option<&str> {
        self.entries.get(fingerprint).map(String::as_str)
    }

    pub fn contains(&self, request: &CompletionRequest) -> bool {
        self.entries.contains_key(&request.fingerprint())
    }

    /// Stores `response` for `request`. Recording the same text twice is a
    /// no-op; a different text for a known fingerprint is rejected.
    pub fn record(&mut self, request: &CompletionRequest, response: &str) -> Result<(), LlmError> {
        request.check()?;
        let fp = request.fingerprint();
        match self.entries.get(&fp) {
            Some(existing) if existing != response => {
                Err(LlmError::FingerprintConflict { fingerprint: fp })
            }
            Some(_) => Ok(()),
            None => {
                self.entries.insert(fp, response.to_string());
                Ok(())
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("store serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, LlmError> {
        serde_json::from_str(text).map_err(|e| LlmError::Store(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<(), LlmError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, LlmError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[derive(Debug, Clone)]
pub struct ReplayBackend {
    store: ReplayStore,
}

impl ReplayBackend {
    pub fn new(store: ReplayStore) -> Self {
        ReplayBackend { store }
    }

    pub fn store(&self) -> &ReplayStore {
        &self.store
    }
}

impl LlmBackend for ReplayBackend {
    fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        request.check()?;
        let fingerprint = request.fingerprint();
        self.store
            .get(&fingerprint)
            .map(str::to_string)
            .ok_or(LlmError::ReplayMiss { fingerprint })
    }
}

/// Wraps a backend and records every successful exchange.
pub struct Recorder<B> {
    inner: B,
    store: Mutex<ReplayStore>,
}

impl<B: LlmBackend> Recorder<B> {
    pub fn new(inner: B) -> Self {
        Recorder {
            inner,
            store: Mutex::new(ReplayStore::default()),
        }
    }

    pub fn store(&self) -> ReplayStore {
        self.store.lock().unwrap().clone()
    }
}

impl<B: LlmBackend> LlmBackend for Recorder<B> {
    fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        let response = self.inner.complete(request)?;
        self.store.lock().unwrap().record(request, &response)?;
        Ok(response)
    }
}

/// Hands out canned responses in order, whatever the request.
#[derive(Debug, Default)]
pub struct ScriptedBackend {
    queue: Mutex<VecDeque<String>>,
}

impl ScriptedBackend {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(responses: I) -> Self {
        ScriptedBackend {
            queue: Mutex::new(responses.into_iter().map(Into::into).collect()),
        }
    }

    pub fn push(&self, response: impl Into<String>) {
        self.queue.lock().unwrap().push_back(response.into());
    }

    pub fn remaining(&self) -> usize {
        self.queue.lock().unwrap().len()
    }
}

impl LlmBackend for ScriptedBackend {
    fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        request.check()?;
        self.queue
            .lock()
            .unwrap()
            .pop_front()
            .ok_or(LlmError::ScriptExhausted)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetryPolicy {
    pub max_attempts: u32,
    pub base_delay: Duration,
    pub max_delay: Duration,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            max_attempts: 3,
            base_delay: Duration::from_millis(250),
            max_delay: Duration::from_secs(4),
        }
    }
}

impl RetryPolicy {
    fn delay(&self, attempt: u32) -> Duration {
        self.base_delay
            .saturating_mul(1 << attempt.min(16))
            .min(self.max_delay)
    }
}

#[derive(Serialize)]
struct WireRequest<'a> {
    model: &'a str,
    messages: &'a [Message],
    temperature: f64,
    max_tokens: u32,
}

pub struct HttpBackend {
    agent: ureq::Agent,
    endpoint: String,
    api_key: Option<String>,
    retry: RetryPolicy,
}

impl HttpBackend {
    pub fn new(endpoint: impl Into<String>, api_key: Option<String>, timeout: Duration) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .http_status_as_error(false)
            .build()
            .into();
        HttpBackend {
            agent,
            endpoint: endpoint.into(),
            api_key,
            retry: RetryPolicy::default(),
        }
    }

    pub fn with_retry(mut self, retry: RetryPolicy) -> Self {
        self.retry = retry;
        self
    }

    fn attempt(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        let body = WireRequest {
            model: &request.model_id,
            messages: &request.messages,
            temperature: request.temperature,
            max_tokens: request.max_tokens,
        };
        let mut req = self.agent.post(&self.endpoint);
        if let Some(key) = &self.api_key {
            req = req.header("Authorization", &format!("Bearer {key}"));
        }
        let mut resp = req.send_json(&body).map_err(|e| match e {
            ureq::Error::Timeout(_) => LlmError::Timeout,
            other => LlmError::Transport(other.to_string()),
        })?;
        let status = resp.status().as_u16();
        let text = resp.body_mut().read_to_string().map_err(|e| match e {
            ureq::Error::Timeout(_) => LlmError::Timeout,
            other => LlmError::Transport(other.to_string()),
        })?;
        match status {
            200..=299 => {}
            429 => return Err(LlmError::RateLimited),
            _ => return Err(LlmError::Http { status, body: text }),
        }
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| LlmError::MalformedResponse(e.to_string()))?;
        value
            .pointer("/choices/0/message/content")
            .and_then(|c| c.as_str())
            .map(str::to_string)
            .ok_or_else(|| LlmError::MalformedResponse("missing choices[0].message.content".into()))
    }
}

impl LlmBackend for HttpBackend {
    fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        request.check()?;
        let mut attempt = 0;
        loop {
            match self.attempt(request) {
                Err(e) if e.is_transient() && attempt + 1 < self.retry.max_attempts => {
                    std::thread::sleep(self.retry.delay(attempt));
                    attempt += 1;
                }
                other => return other,
            }
        }
    }
}

/// Model id per pipeline stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelRouting {
    pub codex: String,
    pub planner: String,
    pub coder: String,
    pub condenser: String,
}

impl Default for ModelRouting {
    fn default() -> Self {
        ModelRouting {
            codex: "claude-3-5-sonnet".into(),
            planner: "gpt-4o".into(),
            coder: "gpt-4o".into(),
            condenser: "gpt-4o-mini".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Replay,
    Http,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BackendConfig {
    pub kind: BackendKind,
    pub endpoint: String,
    /// Name of the environment variable holding the API key.
    pub api_key_env: Option<String>,
    pub replay_store: Option<PathBuf>,
    pub timeout_secs: u64,
}

impl Default for BackendConfig {
    fn default() -> Self {
        BackendConfig {
            kind: BackendKind::Replay,
            endpoint: "http://127.0.0.1:8000/v1/chat/completions".into(),
            api_key_env: None,
            replay_store: None,
            timeout_secs: 60,
        }
    }
}

impl BackendConfig {
    pub fn build(&self) -> Result<Arc<dyn LlmBackend>, LlmError> {
        match self.kind {
            BackendKind::Replay => {
                let store = match &self.replay_store {
                    Some(p) => ReplayStore::load(p)?,
                    None => ReplayStore::default(),
                };
                Ok(Arc::new(ReplayBackend::new(store)))
            }
            BackendKind::Http => {
                let api_key = match &self.api_key_env {
                    Some(var) => Some(
                        std::env::var(var).map_err(|_| LlmError::MissingApiKey(var.clone()))?,
                    ),
                    None => None,
                };
                Ok(Arc::new(HttpBackend::new(
                    self.endpoint.clone(),
                    api_key,
                    Duration::from_secs(self.timeout_secs),
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(text: &str) -> CompletionRequest {
        CompletionRequest::new("m", vec![Message::system("sys"), Message::user(text)])
    }

    #[test]
    fn replay_identity_and_miss() {
        let mut store = ReplayStore::default();
        store.record(&req("hi"), "hello").unwrap();
        let backend = ReplayBackend::new(store);
        assert_eq!(backend.complete(&req("hi")).unwrap(), "hello");
        let miss = req("other");
        match backend.complete(&miss) {
            Err(LlmError::ReplayMiss { fingerprint }) => assert_eq!(fingerprint, miss.fingerprint()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fingerprint_covers_model_messages_temperature_only() {
        let a = req("x");
        let mut b = a.clone();
        b.max_tokens = 7;
        assert_eq!(a.fingerprint(), b.fingerprint());
        b.temperature = 0.5;
        assert_ne!(a.fingerprint(), b.fingerprint());
        let mut c = a.clone();
        c.model_id = "n".into();
        assert_ne!(a.fingerprint(), c.fingerprint());
        assert_eq!(a.fingerprint().len(), 64);
    }

    #[test]
    fn record_conflict() {
        let mut store = ReplayStore::default();
        store.record(&req("a"), "one").unwrap();
        store.record(&req("a"), "one").unwrap();
        assert!(matches!(
            store.record(&req("a"), "two"),
            Err(LlmError::FingerprintConflict { .. })
        ));
        assert_eq!(store.len(), 1);
    }

    #[test]
    fn request_checks() {
        let empty = CompletionRequest::new("m", vec![]);
        assert!(matches!(empty.check(), Err(LlmError::InvalidRequest(_))));
        let mut hot = req("x");
        hot.temperature = 2.5;
        assert!(hot.check().is_err());
        assert_eq!(req("x").temperature, 0.0);
    }

    #[test]
    fn store_file_round_trip_is_byte_identical() {
        let mut store = ReplayStore::default();
        for i in 0..5 {
            store.record(&req(&format!("q{i}")), &format!("a\n{i}")).unwrap();
        }
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("store.json");
        store.save(&p).unwrap();
        let first = std::fs::read(&p).unwrap();
        let loaded = ReplayStore::load(&p).unwrap();
        assert_eq!(loaded, store);
        loaded.save(&p).unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), first);
    }

    #[test]
    fn recorder_feeds_replay() {
        let rec = Recorder::new(ScriptedBackend::new(["r1", "r2"]));
        assert_eq!(rec.complete(&req("a")).unwrap(), "r1");
        assert_eq!(rec.complete(&req("b")).unwrap(), "r2");
        assert!(matches!(rec.complete(&req("c")), Err(LlmError::ScriptExhausted)));
        let replay = ReplayBackend::new(rec.store());
        assert_eq!(replay.complete(&req("b")).unwrap(), "r2");
    }

    #[test]
    fn closures_are_backends() {
        let echo = |r: &CompletionRequest| Ok(r.last_user().unwrap_or_default().to_uppercase());
        assert_eq!(echo.complete(&req("abc")).unwrap(), "ABC");
    }

    #[test]
    fn backoff_is_capped() {
        let p = RetryPolicy::default();
        assert_eq!(p.delay(0), Duration::from_millis(250));
        assert_eq!(p.delay(1), Duration::from_millis(500));
        assert_eq!(p.delay(10), Duration::from_secs(4));
    }
}
