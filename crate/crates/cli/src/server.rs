//! HTTP/JSON API over scene sessions, with a server-sent event stream of
//! journal events per session.

use std::collections::BTreeMap;
use std::convert::Infallible;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Request, State};
use axum::http::{header, Method, StatusCode};
use axum::middleware::{self, Next};
use axum::response::sse::{Event, KeepAlive, Sse};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use futures::stream::{self, Stream, StreamExt};
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::sync::broadcast;

use scene_copilot::config::{AppConfig, Resources};
use scene_copilot::llm::LlmBackend;
use scene_copilot::session::{read_journal, JournalEvent, Session, SessionError};

pub struct SessionSlot {
    session: Mutex<Session>,
    events: broadcast::Sender<JournalEvent>,
}

pub struct AppState {
    config: AppConfig,
    resources: Resources,
    backend: Arc<dyn LlmBackend>,
    sessions: RwLock<BTreeMap<String, Arc<SessionSlot>>>,
    next_id: AtomicU64,
}

impl AppState {
    pub fn new(config: AppConfig, resources: Resources, backend: Arc<dyn LlmBackend>) -> Self {
        AppState {
            config,
            resources,
            backend,
            sessions: RwLock::new(BTreeMap::new()),
            next_id: AtomicU64::new(1),
        }
    }

    fn journal_path(&self, id: &str) -> Option<PathBuf> {
        self.config.paths.sessions_dir.as_ref().map(|d| d.join(format!("{id}.jsonl")))
    }

    fn deps(&self) -> Arc<scene_copilot::session::SessionDeps> {
        Arc::new(self.config.session_deps(&self.resources, self.backend.clone(), self.config.clock()))
    }

    fn insert(&self, session: Session) -> Arc<SessionSlot> {
        let (events, _) = broadcast::channel(1024);
        let id = session.id().to_string();
        let slot = Arc::new(SessionSlot {
            session: Mutex::new(session),
            events,
        });
        self.sessions.write().unwrap().insert(id, slot.clone());
        slot
    }

    /// Restores every journal found in the sessions directory. Returns the
    /// number restored.
    pub fn restore_sessions(&self) -> Result<usize, SessionError> {
        let Some(dir) = &self.config.paths.sessions_dir else {
            return Ok(0);
        };
        if !dir.is_dir() {
            return Ok(0);
        }
        let mut n = 0;
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "jsonl"))
            .collect();
        paths.sort();
        for path in paths {
            let id = path.file_stem().unwrap().to_string_lossy().into_owned();
            let events = read_journal(&path)?;
            let mut session = Session::restore(&id, self.deps(), events)?;
            session.persist_to(&path)?;
            self.insert(session);
            n += 1;
        }
        Ok(n)
    }

    fn slot(&self, id: &str) -> Result<Arc<SessionSlot>, ApiError> {
        self.sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "SessionNotFound", format!("no session `{id}`")))
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: String,
    message: String,
    details: Option<Value>,
}

impl ApiError {
    fn new(status: StatusCode, code: impl Into<String>, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code: code.into(),
            message: message.into(),
            details: None,
        }
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match &e {
            SessionError::WrongPhase { .. } | SessionError::NoPendingEdit => StatusCode::CONFLICT,
            SessionError::NotExecutable(_)
            | SessionError::NoCommandFound
            | SessionError::Cot(_)
            | SessionError::Prompt(_) => StatusCode::UNPROCESSABLE_ENTITY,
            SessionError::UnknownSelectionPath(_) => StatusCode::BAD_REQUEST,
            SessionError::GeneratorFailed(_) | SessionError::Backend(_) | SessionError::Scene(_) => {
                StatusCode::BAD_GATEWAY
            }
            SessionError::CorruptJournal { .. } | SessionError::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let details = match &e {
            SessionError::NotExecutable(report) => serde_json::to_value(report).ok(),
            _ => None,
        };
        ApiError {
            status,
            code: e.code().to_string(),
            message: e.to_string(),
            details,
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "BadRequest", r.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({"code": self.code, "message": self.message});
        if let Some(d) = self.details {
            body["details"] = d;
        }
        (self.status, Json(body)).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

/// Runs `op` on the session off the async runtime, then publishes any new
/// journal events. Events are published even when `op` fails, since a
/// failed operation can still journal an error.
async fn with_session<F>(state: &AppState, id: &str, op: F) -> ApiResult
where
    F: FnOnce(&mut Session) -> Result<Value, SessionError> + Send + 'static,
{
    let slot = state.slot(id)?;
    let result = tokio::task::spawn_blocking(move || {
        let mut session = slot.session.lock().unwrap();
        let before = session.journal().len();
        let out = op(&mut session).map(|mut v| {
            v["state"] = serde_json::to_value(session.state()).unwrap();
            v
        });
        for ev in &session.journal()[before..] {
            // no subscribers is fine
            let _ = slot.events.send(ev.clone());
        }
        out
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "Internal", e.to_string()))?;
    Ok(Json(result?))
}

#[derive(Deserialize, Default)]
struct CreateBody {
    session_id: Option<String>,
}

#[derive(Deserialize)]
struct TextBody {
    text: String,
}

#[derive(Deserialize)]
struct EditBody {
    text: String,
    #[serde(default)]
    selection: Vec<String>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

async fn create_session(
    State(state): State<Arc<AppState>>,
    body: Option<Json<CreateBody>>,
) -> Result<(StatusCode, Json<Value>), ApiError> {
    let body = body.map(|b| b.0).unwrap_or_default();
    let id = match body.session_id {
        Some(id) => id,
        None => loop {
            let id = format!("session-{}", state.next_id.fetch_add(1, Ordering::SeqCst));
            if !state.sessions.read().unwrap().contains_key(&id) {
                break id;
            }
        },
    };
    if !valid_id(&id) {
        return Err(ApiError::new(StatusCode::BAD_REQUEST, "BadRequest", format!("invalid session id `{id}`")));
    }
    if state.sessions.read().unwrap().contains_key(&id) {
        return Err(ApiError::new(StatusCode::CONFLICT, "SessionExists", format!("session `{id}` exists")));
    }
    let mut session = Session::new(&id, state.deps());
    if let Some(path) = state.journal_path(&id) {
        session.persist_to(&path).map_err(ApiError::from)?;
    }
    let body = json!({"session_id": id, "state": session.state()});
    state.insert(session);
    Ok((StatusCode::CREATED, Json(body)))
}

async fn list_sessions(State(state): State<Arc<AppState>>) -> Json<Value> {
    let ids: Vec<String> = state.sessions.read().unwrap().keys().cloned().collect();
    Json(json!({"sessions": ids}))
}

async fn get_state(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let slot = state.slot(&id)?;
    let s = slot.session.lock().unwrap();
    Ok(Json(serde_json::to_value(s.state()).unwrap()))
}

async fn get_journal(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let slot = state.slot(&id)?;
    let s = slot.session.lock().unwrap();
    Ok(Json(serde_json::to_value(s.journal()).unwrap()))
}

async fn get_scene(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let slot = state.slot(&id)?;
    let s = slot.session.lock().unwrap();
    let stage = if s.fine_scene().is_some() { "fine" } else { "coarse" };
    let scene = s
        .current_scene()
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "NoScene", "no scene has been generated yet"))?;
    let paths = scene_copilot::usda::dictionary_paths(&scene.dictionary).unwrap_or_default();
    Ok(Json(json!({
        "stage": stage,
        "dictionary": scene.dictionary,
        "prim_paths": paths,
        "index_fingerprint": scene.index.fingerprint(),
    })))
}

async fn prompt(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Result<Json<TextBody>, JsonRejection>,
) -> ApiResult {
    let Json(body) = body?;
    with_session(&state, &id, move |s| {
        let p = s.submit_prompt(&body.text)?;
        Ok(json!({"proposed": p}))
    })
    .await
}

async fn approve_command(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    with_session(&state, &id, |s| s.approve_command().map(|_| json!({}))).await
}

async fn edit(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Result<Json<EditBody>, JsonRejection>,
) -> ApiResult {
    let Json(body) = body?;
    with_session(&state, &id, move |s| {
        let e = s.submit_edit(&body.text, &body.selection)?;
        Ok(json!({"pending_edit": e}))
    })
    .await
}

async fn approve_edit(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    with_session(&state, &id, |s| s.approve_edit().map(|_| json!({}))).await
}

async fn reject_edit(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    with_session(&state, &id, |s| s.reject_edit().map(|_| json!({}))).await
}

async fn render(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    with_session(&state, &id, |s| s.request_render().map(|c| json!({"command": c}))).await
}

fn sse_event(ev: &JournalEvent) -> Result<Event, Infallible> {
    let kind = serde_json::to_value(ev.kind).unwrap();
    Ok(Event::default()
        .id(ev.seq.to_string())
        .event(kind.as_str().unwrap_or("event"))
        .data(serde_json::to_string(ev).unwrap()))
}

/// Journal so far, then live events. The history snapshot and the
/// subscription are taken under the session lock so nothing is missed or
/// repeated.
async fn events(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Sse<impl Stream<Item = Result<Event, Infallible>>>, ApiError> {
    let slot = state.slot(&id)?;
    let (history, rx) = {
        let s = slot.session.lock().unwrap();
        (s.journal().to_vec(), slot.events.subscribe())
    };
    let past = stream::iter(history.iter().map(sse_event).collect::<Vec<_>>());
    let live = stream::unfold(rx, |mut rx| async move {
        loop {
            match rx.recv().await {
                Ok(ev) => return Some((sse_event(&ev), rx)),
                Err(broadcast::error::RecvError::Lagged(_)) => continue,
                Err(broadcast::error::RecvError::Closed) => return None,
            }
        }
    });
    Ok(Sse::new(past.chain(live)).keep_alive(KeepAlive::default()))
}

async fn health() -> Json<Value> {
    Json(json!({"status": "ok"}))
}

/// Mutating requests need the bearer token when one is configured. Reads
/// stay open so browser event streams, which cannot set headers, work.
async fn require_token(State(state): State<Arc<AppState>>, req: Request, next: Next) -> Response {
    if let Some(token) = &state.config.server.token {
        if req.method() != Method::GET {
            let ok = req
                .headers()
                .get(header::AUTHORIZATION)
                .and_then(|v| v.to_str().ok())
                .and_then(|v| v.strip_prefix("Bearer "))
                .is_some_and(|t| t == token);
            if !ok {
                return ApiError::new(StatusCode::UNAUTHORIZED, "Unauthorized", "missing or wrong bearer token")
                    .into_response();
            }
        }
    }
    next.run(req).await
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/sessions", post(create_session).get(list_sessions))
        .route("/sessions/{id}/state", get(get_state))
        .route("/sessions/{id}/journal", get(get_journal))
        .route("/sessions/{id}/scene", get(get_scene))
        .route("/sessions/{id}/events", get(events))
        .route("/sessions/{id}/prompt", post(prompt))
        .route("/sessions/{id}/approve-command", post(approve_command))
        .route("/sessions/{id}/edit", post(edit))
        .route("/sessions/{id}/approve-edit", post(approve_edit))
        .route("/sessions/{id}/reject-edit", post(reject_edit))
        .route("/sessions/{id}/render", post(render))
        .layer(middleware::from_fn_with_state(state.clone(), require_token))
        .with_state(state)
}
