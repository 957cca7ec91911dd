//! HTTP/JSON facade over the engine.
//!
//! | Method | Path           | Body           | Response          |
//! |--------|----------------|----------------|-------------------|
//! | GET    | `/api/malls`   |                | `[MallSummary]`   |
//! | POST   | `/api/skyline` | `QueryRequest` | `QueryResponse`   |
//! | GET    | `/healthz`     |                | 200 once loaded   |
//!
//! Queries read an immutable dataset snapshot; [`QueryService::load`] swaps
//! the snapshot atomically, so in-flight queries finish on the old one.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};
use std::time::Instant;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{run_query, Algorithm, EngineError};
use crate::geo::{build_distance_matrix, DistanceProvider, Fallback, GreatCircle, HttpRoutingProvider};
use crate::ingest::{load_mall_csv, Dataset};
use crate::model::{GeoPoint, QuerySpec, DEFAULT_LIMIT, FACILITY_COUNT};

pub const DATA_ENV: &str = "PARETO_MALL_DATA";
pub const PORT_ENV: &str = "PARETO_MALL_PORT";
pub const DEFAULT_PORT: u16 = 8080;
pub const MAX_LIMIT: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl FieldError {
    fn new(field: &str, message: impl Into<String>) -> Self {
        FieldError {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("bad request: {message}")]
    BadRequest { message: String, fields: Vec<FieldError> },
    #[error("dataset not loaded")]
    NotLoaded,
    #[error("internal error: {0}")]
    Internal(String),
}

impl ServiceError {
    fn bad_request(message: impl Into<String>, fields: Vec<FieldError>) -> Self {
        ServiceError::BadRequest {
            message: message.into(),
            fields,
        }
    }

    pub fn status(&self) -> StatusCode {
        match self {
            ServiceError::BadRequest { .. } => StatusCode::BAD_REQUEST,
            ServiceError::NotLoaded => StatusCode::SERVICE_UNAVAILABLE,
            ServiceError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fields: Vec<FieldError>,
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = self.status();
        let fields = match &self {
            ServiceError::BadRequest { fields, .. } => fields.clone(),
            _ => Vec::new(),
        };
        let body = ErrorBody {
            error: self.to_string(),
            fields,
        };
        (status, Json(body)).into_response()
    }
}

fn default_algorithm() -> String {
    "sfs".to_string()
}

fn default_limit() -> usize {
    DEFAULT_LIMIT
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryRequest {
    pub origin: GeoPoint,
    #[serde(default)]
    pub selected_facilities: Vec<usize>,
    #[serde(default)]
    pub include_food_court: bool,
    #[serde(default = "default_algorithm")]
    pub algorithm: String,
    #[serde(default = "default_limit")]
    pub limit: usize,
}

impl QueryRequest {
    pub fn new(origin: GeoPoint) -> Self {
        QueryRequest {
            origin,
            selected_facilities: Vec::new(),
            include_food_court: false,
            algorithm: default_algorithm(),
            limit: DEFAULT_LIMIT,
        }
    }

    /// Checks every field and collects all problems.
    pub fn validate(&self) -> Result<(QuerySpec, Algorithm), ServiceError> {
        let mut fields = Vec::new();
        if !(self.origin.lat.is_finite() && (-90.0..=90.0).contains(&self.origin.lat)) {
            fields.push(FieldError::new("origin.lat", format!("{} outside [-90, 90]", self.origin.lat)));
        }
        if !(self.origin.lng.is_finite() && (-180.0..=180.0).contains(&self.origin.lng)) {
            fields.push(FieldError::new("origin.lng", format!("{} outside [-180, 180]", self.origin.lng)));
        }
        for &idx in &self.selected_facilities {
            if idx >= FACILITY_COUNT {
                fields.push(FieldError::new(
                    "selected_facilities",
                    format!("index {idx} outside [0, {}]", FACILITY_COUNT - 1),
                ));
            }
        }
        let mut sorted = self.selected_facilities.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            fields.push(FieldError::new("selected_facilities", "duplicate index"));
        }
        if !(1..=MAX_LIMIT).contains(&self.limit) {
            fields.push(FieldError::new("limit", format!("{} outside [1, {MAX_LIMIT}]", self.limit)));
        }
        let algorithm = match self.algorithm.parse::<Algorithm>() {
            Ok(a) => Some(a),
            Err(e) => {
                fields.push(FieldError::new("algorithm", e.to_string()));
                None
            }
        };
        if !fields.is_empty() {
            return Err(ServiceError::bad_request("invalid query", fields));
        }
        let spec = QuerySpec::canonical(self.origin, &self.selected_facilities, self.include_food_court, self.limit)
            .map_err(|e| ServiceError::bad_request(e.to_string(), Vec::new()))?;
        Ok((spec, algorithm.expect("validated")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryEntry {
    pub rank: usize,
    pub code: String,
    pub name: String,
    pub lat: f64,
    pub lng: f64,
    pub distance_km: f64,
    pub store_number: u32,
    pub parking_space: u32,
    pub food_court: bool,
    pub income: u64,
    pub population: u64,
    /// Counts for the requested facility categories, in request order.
    pub selected_facility_counts: Vec<u32>,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryResponse {
    pub entries: Vec<QueryEntry>,
    pub algorithm: String,
    pub divergence: bool,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MallSummary {
    pub code: String,
    pub name: String,
    pub lat: f64,
    pub lng: f64,
}

/// Shared query state: a swappable dataset snapshot and a distance provider.
pub struct QueryService {
    dataset: RwLock<Option<Arc<Dataset>>>,
    provider: Arc<dyn DistanceProvider>,
    fallback: Fallback,
}

impl Default for QueryService {
    fn default() -> Self {
        Self::new(Arc::new(GreatCircle))
    }
}

impl QueryService {
    pub fn new(provider: Arc<dyn DistanceProvider>) -> Self {
        QueryService {
            dataset: RwLock::new(None),
            provider,
            fallback: Fallback::GreatCircle,
        }
    }

    pub fn with_dataset(dataset: Dataset) -> Self {
        let svc = Self::default();
        svc.load(dataset);
        svc
    }

    pub fn load(&self, dataset: Dataset) {
        *self.dataset.write().expect("dataset lock poisoned") = Some(Arc::new(dataset));
    }

    pub fn snapshot(&self) -> Result<Arc<Dataset>, ServiceError> {
        self.dataset
            .read()
            .expect("dataset lock poisoned")
            .clone()
            .ok_or(ServiceError::NotLoaded)
    }

    pub fn is_loaded(&self) -> bool {
        self.snapshot().is_ok()
    }

    pub fn list_malls(&self) -> Result<Vec<MallSummary>, ServiceError> {
        let dataset = self.snapshot()?;
        let mut malls: Vec<MallSummary> = dataset
            .records
            .iter()
            .map(|r| MallSummary {
                code: r.code.clone(),
                name: r.name.clone(),
                lat: r.location.lat,
                lng: r.location.lng,
            })
            .collect();
        malls.sort_by(|a, b| code_order(&a.code, &b.code));
        Ok(malls)
    }

    pub fn handle_query(&self, req: &QueryRequest) -> Result<QueryResponse, ServiceError> {
        let started = Instant::now();
        let (spec, algorithm) = req.validate()?;
        let dataset = self.snapshot()?;
        let matrix = build_distance_matrix(spec.origin, &dataset, self.provider.as_ref(), self.fallback)
            .map_err(|e| ServiceError::Internal(e.to_string()))?;
        let result = run_query(&dataset, &spec, &matrix, algorithm).map_err(|e| match e {
            EngineError::Model(m) => ServiceError::bad_request(m.to_string(), Vec::new()),
            other => ServiceError::Internal(other.to_string()),
        })?;
        let entries = result
            .entries
            .iter()
            .map(|e| {
                let r = &e.record;
                QueryEntry {
                    rank: e.rank,
                    code: e.code.clone(),
                    name: r.name.clone(),
                    lat: r.location.lat,
                    lng: r.location.lng,
                    distance_km: e.distance_km,
                    store_number: r.store_number,
                    parking_space: r.parking_space,
                    food_court: r.food_court,
                    income: r.avg_household_income,
                    population: r.population,
                    selected_facility_counts: req.selected_facilities.iter().map(|&i| r.facilities[i]).collect(),
                    probability: e.probability,
                }
            })
            .collect();
        Ok(QueryResponse {
            entries,
            algorithm: result.algorithm,
            divergence: result.divergence,
            elapsed_ms: started.elapsed().as_secs_f64() * 1000.0,
        })
    }
}

/// Orders codes like `OH2` before `OH10`: by length of the numeric tail, then
/// lexically.
fn code_order(a: &str, b: &str) -> std::cmp::Ordering {
    let split = |s: &str| {
        let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (head, tail) = s.split_at(s.len() - digits);
        (head.to_string(), tail.trim_start_matches('0').len(), tail.to_string())
    };
    split(a).cmp(&split(b))
}

/// Parses a JSON request body into a [`QueryRequest`] with a 400 on failure.
pub fn parse_query_body(body: &[u8]) -> Result<QueryRequest, ServiceError> {
    serde_json::from_slice(body).map_err(|e| {
        let message = e.to_string();
        let field = message
            .split('`')
            .nth(1)
            .map(str::to_string)
            .unwrap_or_else(|| "body".to_string());
        ServiceError::bad_request(
            "malformed request body",
            vec![FieldError {
                field,
                message,
            }],
        )
    })
}

async fn list_malls_handler(State(svc): State<Arc<QueryService>>) -> Result<Json<Vec<MallSummary>>, ServiceError> {
    svc.list_malls().map(Json)
}

async fn skyline_handler(State(svc): State<Arc<QueryService>>, body: Bytes) -> Result<Json<QueryResponse>, ServiceError> {
    let req = parse_query_body(&body)?;
    // Routing providers may block on network I/O.
    tokio::task::spawn_blocking(move || svc.handle_query(&req))
        .await
        .map_err(|e| ServiceError::Internal(e.to_string()))?
        .map(Json)
}

async fn health_handler(State(svc): State<Arc<QueryService>>) -> Response {
    if svc.is_loaded() {
        (StatusCode::OK, "ok").into_response()
    } else {
        ServiceError::NotLoaded.into_response()
    }
}

pub fn router(service: Arc<QueryService>) -> Router {
    Router::new()
        .route("/api/malls", get(list_malls_handler))
        .route("/api/skyline", post(skyline_handler))
        .route("/healthz", get(health_handler))
        .with_state(service)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ServeConfig {
    pub data_path: Option<PathBuf>,
    pub port: u16,
}

impl ServeConfig {
    /// Reads [`DATA_ENV`] and [`PORT_ENV`].
    pub fn from_env() -> Result<Self, String> {
        let data_path = std::env::var_os(DATA_ENV).map(PathBuf::from);
        let port = match std::env::var(PORT_ENV) {
            Ok(p) => p.parse().map_err(|_| format!("{PORT_ENV}: invalid port `{p}`"))?,
            Err(_) => DEFAULT_PORT,
        };
        Ok(ServeConfig { data_path, port })
    }
}

/// Builds the service from `config`, picking the routing provider from the
/// environment when configured.
pub fn build_service(config: &ServeConfig) -> Result<QueryService, Box<dyn std::error::Error + Send + Sync>> {
    let provider: Arc<dyn DistanceProvider> = match HttpRoutingProvider::from_env() {
        Some(p) => Arc::new(p?),
        None => Arc::new(GreatCircle),
    };
    let service = QueryService::new(provider);
    if let Some(path) = &config.data_path {
        service.load(load_mall_csv(path)?);
    }
    Ok(service)
}

pub async fn serve(config: ServeConfig) -> Result<(), Box<dyn std::error::Error + Send + Sync>> {
    let service = Arc::new(build_service(&config)?);
    if !service.is_loaded() {
        tracing::warn!("no dataset configured ({DATA_ENV}); queries will return 503");
    }
    let addr = SocketAddr::from(([0, 0, 0, 0], config.port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(%addr, "listening");
    axum::serve(listener, router(service)).await?;
    Ok(())
}
