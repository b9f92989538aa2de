//! JSON-over-HTTP API for the explorer.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use clusterlab_core::bruhat::{bruhat_lambda, build_bfz_seed, DoubleWord};
use clusterlab_core::cluster::Seed;
use clusterlab_core::quantum::QuantumSeed;
use clusterlab_core::{Error, IntMatrix};
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::sync::Mutex;
use uuid::Uuid;

use crate::session::{Session, SessionSeed};

type Shared = Arc<Mutex<Session>>;

/// Session map; each session sits behind its own lock so requests on one
/// session are serialized while distinct sessions proceed independently.
#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<Uuid, Shared>>>,
}

impl AppState {
    fn insert(&self, s: Session) -> Uuid {
        let id = Uuid::new_v4();
        self.sessions
            .write()
            .expect("session map lock")
            .insert(id, Arc::new(Mutex::new(s)));
        id
    }

    fn get(&self, id: &str) -> Result<Shared, ApiError> {
        let id = Uuid::parse_str(id).map_err(|_| ApiError::NotFound)?;
        self.sessions
            .read()
            .expect("session map lock")
            .get(&id)
            .cloned()
            .ok_or(ApiError::NotFound)
    }
}

enum ApiError {
    BadRequest(String),
    NotFound,
    Conflict(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (code, name, msg) = match self {
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, "BadRequest", m),
            ApiError::NotFound => (StatusCode::NOT_FOUND, "NotFound", "unknown session".into()),
            ApiError::Conflict(m) => (StatusCode::CONFLICT, "Conflict", m),
        };
        (code, Json(json!({"error": name, "message": msg}))).into_response()
    }
}

fn kernel_error(e: Error) -> ApiError {
    ApiError::BadRequest(e.to_string())
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(e.to_string()))
}

pub fn router() -> Router {
    router_with(AppState::default())
}

pub fn router_with(state: AppState) -> Router {
    Router::new()
        .route("/health", get(|| async { "ok" }))
        .route("/session", post(create_session))
        .route("/session/{id}", get(get_session))
        .route("/session/{id}/mutate", post(mutate))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/strata", get(strata))
        .route("/bruhat/build", post(bruhat_build))
        .with_state(state)
}

pub async fn serve(host: &str, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router()).await
}

/// Body: a Seed JSON (optionally with a `lambda` for strata), a QuantumSeed
/// JSON, or a compatible pair `{"B", "lambda"}` opening a quantum session.
async fn create_session(State(st): State<AppState>, body: Bytes) -> Result<Json<Value>, ApiError> {
    let mut v: Value = parse_body(&body)?;
    let obj = v
        .as_object_mut()
        .ok_or_else(|| ApiError::BadRequest("expected a JSON object".into()))?;
    let session = if obj.contains_key("qvariables") {
        let q: QuantumSeed = parse_body(&body)?;
        Session::new(SessionSeed::Quantum(q), None)
    } else if obj.contains_key("variables") {
        let lambda: Option<IntMatrix> = match obj.remove("lambda") {
            Some(l) => Some(serde_json::from_value(l).map_err(|e| ApiError::BadRequest(e.to_string()))?),
            None => None,
        };
        let s: Seed = serde_json::from_value(v).map_err(|e| ApiError::BadRequest(e.to_string()))?;
        Session::new(SessionSeed::Classical(s), lambda)
    } else {
        let q = crate::io::quantum_from_value(v, "body").map_err(|e| ApiError::BadRequest(e.to_string()))?;
        Session::new(SessionSeed::Quantum(q), None)
    }
    .map_err(kernel_error)?;
    let seed = session.current().to_json();
    let id = st.insert(session);
    Ok(Json(json!({"id": id.to_string(), "seed": seed})))
}

async fn get_session(State(st): State<AppState>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let s = st.get(&id)?;
    let s = s.lock().await;
    Ok(Json(s.current().to_json()))
}

#[derive(Deserialize)]
struct MutateBody {
    k: i64,
}

async fn mutate(
    State(st): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<Value>, ApiError> {
    let s = st.get(&id)?;
    let MutateBody { k } = parse_body(&body)?;
    let mut s = s.lock().await;
    let m = s.current().m();
    if k < 1 || k as usize > m {
        return Err(ApiError::Conflict(format!("index {k} not in [1, {m}]")));
    }
    let seed = s
        .mutate(k as usize - 1)
        .map_err(|e| ApiError::Conflict(e.to_string()))?;
    Ok(Json(seed.to_json()))
}

async fn undo(State(st): State<AppState>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let s = st.get(&id)?;
    let mut s = s.lock().await;
    match s.undo() {
        Some(seed) => Ok(Json(seed.to_json())),
        None => Err(ApiError::Conflict("nothing to undo".into())),
    }
}

async fn strata(State(st): State<AppState>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let s = st.get(&id)?;
    let s = s.lock().await;
    let report = s.strata().map_err(kernel_error)?;
    Ok(Json(serde_json::to_value(report).expect("strata serialize")))
}

#[derive(Deserialize)]
struct BuildBody {
    word: String,
    rank: usize,
}

/// Opens a classical session on the seed of a double word, with the
/// integer-scaled standard bracket attached for strata.
async fn bruhat_build(State(st): State<AppState>, body: Bytes) -> Result<Json<Value>, ApiError> {
    let BuildBody { word, rank } = parse_body(&body)?;
    let w = DoubleWord::parse(&word, rank).map_err(kernel_error)?;
    let bfz = build_bfz_seed(&w).map_err(kernel_error)?;
    let (_, lambda) = bruhat_lambda(&w).map_err(kernel_error)?.integer_scaling();
    let session = Session::new(SessionSeed::Classical(bfz.seed()), Some(lambda)).map_err(kernel_error)?;
    let seed = session.current().to_json();
    let id = st.insert(session);
    Ok(Json(json!({
        "id": id.to_string(),
        "seed": seed,
        "vertices": bfz.order,
        "exchangeable": bfz.exchangeable,
    })))
}
