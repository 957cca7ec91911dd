//! Origin-to-mall distances.
//!
//! [`GreatCircle`] is the offline default. [`HttpRoutingProvider`] talks to a
//! road-routing service; when it fails for a destination the matrix falls
//! back to the great-circle value and is tagged `"mixed"`.

use std::collections::BTreeMap;
use std::time::Duration;

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::ingest::Dataset;
use crate::model::GeoPoint;

/// Mean Earth radius in km.
pub const EARTH_RADIUS_KM: f64 = 6371.0088;

/// Road distances may undercut the geodesic by at most this much.
pub const ROUTE_UNDERCUT_TOLERANCE_KM: f64 = 0.5;

pub const GREAT_CIRCLE_TAG: &str = "great-circle";
pub const MIXED_TAG: &str = "mixed";

pub const ROUTING_URL_ENV: &str = "PARETO_MALL_ROUTING_URL";
pub const ROUTING_KEY_ENV: &str = "PARETO_MALL_ROUTING_KEY";

#[derive(Debug, Error)]
pub enum GeoError {
    #[error("provider `{provider}` unavailable for {code}: {reason}")]
    ProviderUnavailable {
        provider: String,
        code: String,
        reason: String,
    },
    #[error("empty dataset")]
    EmptyDataset,
}

#[derive(Debug, Clone, Error, PartialEq)]
#[error("{0}")]
pub struct ProviderError(pub String);

/// Great-circle distance in km.
pub fn haversine_km(p: GeoPoint, q: GeoPoint) -> f64 {
    let (lat1, lat2) = (p.lat.to_radians(), q.lat.to_radians());
    let dlat = lat2 - lat1;
    let dlng = (q.lng - p.lng).to_radians();
    let h = (dlat / 2.0).sin().powi(2) + lat1.cos() * lat2.cos() * (dlng / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
}

/// A source of origin-to-destination distances.
///
/// Implementations must be callable from several threads at once.
pub trait DistanceProvider: Send + Sync {
    fn name(&self) -> &str;

    fn distance_km(&self, origin: GeoPoint, destination: GeoPoint) -> Result<f64, ProviderError>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GreatCircle;

impl DistanceProvider for GreatCircle {
    fn name(&self) -> &str {
        GREAT_CIRCLE_TAG
    }

    fn distance_km(&self, origin: GeoPoint, destination: GeoPoint) -> Result<f64, ProviderError> {
        Ok(haversine_km(origin, destination))
    }
}

/// HTTP routing client.
///
/// Sends `GET <url>?origin=<lat>,<lng>&destination=<lat>,<lng>[&key=<key>]`
/// and expects a JSON body `{"distance_meters": <number>}`.
#[derive(Debug, Clone)]
pub struct HttpRoutingProvider {
    url: String,
    key: Option<String>,
    client: reqwest::blocking::Client,
}

#[derive(Deserialize)]
struct RoutingResponse {
    distance_meters: f64,
}

impl HttpRoutingProvider {
    pub fn new(url: impl Into<String>, key: Option<String>) -> Result<Self, ProviderError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(10))
            .build()
            .map_err(|e| ProviderError(e.to_string()))?;
        Ok(HttpRoutingProvider {
            url: url.into(),
            key,
            client,
        })
    }

    /// Reads [`ROUTING_URL_ENV`] and [`ROUTING_KEY_ENV`]; `None` when no URL
    /// is configured.
    pub fn from_env() -> Option<Result<Self, ProviderError>> {
        let url = std::env::var(ROUTING_URL_ENV).ok().filter(|u| !u.is_empty())?;
        let key = std::env::var(ROUTING_KEY_ENV).ok().filter(|k| !k.is_empty());
        Some(Self::new(url, key))
    }
}

impl DistanceProvider for HttpRoutingProvider {
    fn name(&self) -> &str {
        "http-routing"
    }

    fn distance_km(&self, origin: GeoPoint, destination: GeoPoint) -> Result<f64, ProviderError> {
        let mut query = vec![
            ("origin", format!("{},{}", origin.lat, origin.lng)),
            ("destination", format!("{},{}", destination.lat, destination.lng)),
        ];
        if let Some(key) = &self.key {
            query.push(("key", key.clone()));
        }
        let resp = self
            .client
            .get(&self.url)
            .query(&query)
            .send()
            .and_then(|r| r.error_for_status())
            .map_err(|e| ProviderError(e.to_string()))?;
        let body: RoutingResponse = resp.json().map_err(|e| ProviderError(e.to_string()))?;
        Ok(body.distance_meters / 1000.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fallback {
    /// Substitute the great-circle distance for failed destinations.
    GreatCircle,
    /// Fail the whole matrix on the first provider failure.
    Disabled,
}

/// Distances from one origin to every mall in a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    pub origin: GeoPoint,
    pub entries: BTreeMap<String, f64>,
    pub provider: String,
}

impl DistanceMatrix {
    pub fn get(&self, code: &str) -> Option<f64> {
        self.entries.get(code).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn checked(provider: &dyn DistanceProvider, origin: GeoPoint, dest: GeoPoint) -> Result<f64, ProviderError> {
    let d = provider.distance_km(origin, dest)?;
    if !d.is_finite() || d < 0.0 {
        return Err(ProviderError(format!("invalid distance {d}")));
    }
    let floor = haversine_km(origin, dest) - ROUTE_UNDERCUT_TOLERANCE_KM;
    if d < floor {
        return Err(ProviderError(format!("distance {d} km undercuts the geodesic")));
    }
    Ok(d)
}

/// Computes the distance from `origin` to every mall, querying the provider
/// concurrently.
pub fn build_distance_matrix(
    origin: GeoPoint,
    dataset: &Dataset,
    provider: &dyn DistanceProvider,
    fallback: Fallback,
) -> Result<DistanceMatrix, GeoError> {
    if dataset.is_empty() {
        return Err(GeoError::EmptyDataset);
    }
    let results: Vec<(String, Result<f64, ProviderError>)> = dataset
        .records
        .par_iter()
        .map(|r| (r.code.clone(), checked(provider, origin, r.location)))
        .collect();

    let mut entries = BTreeMap::new();
    let mut fell_back = false;
    for ((code, result), record) in results.into_iter().zip(&dataset.records) {
        let d = match result {
            Ok(d) => d,
            Err(e) => match fallback {
                Fallback::GreatCircle => {
                    tracing::warn!(code = %code, error = %e, "routing failed, using great-circle distance");
                    fell_back = true;
                    haversine_km(origin, record.location)
                }
                Fallback::Disabled => {
                    return Err(GeoError::ProviderUnavailable {
                        provider: provider.name().to_string(),
                        code,
                        reason: e.0,
                    })
                }
            },
        };
        entries.insert(code, d);
    }
    Ok(DistanceMatrix {
        origin,
        entries,
        provider: if fell_back {
            MIXED_TAG.to_string()
        } else {
            provider.name().to_string()
        },
    })
}
