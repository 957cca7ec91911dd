use std::collections::HashSet;
use std::sync::Arc;

use crate::geo::DistanceMatrix;
use crate::model::{MallRecord, QueryPoint, QuerySpec};

use super::{EngineError, Result};

/// Intersection of two skyline answers.
#[derive(Debug, Clone)]
pub struct MatchOutcome {
    pub points: Vec<QueryPoint>,
    /// Set when the two inputs disagree on membership.
    pub divergence: bool,
}

/// Intersects `a` and `b` by mall code, keeping `a`'s payloads and order.
pub fn match_results(a: &[QueryPoint], b: &[QueryPoint]) -> MatchOutcome {
    let in_a: HashSet<&str> = a.iter().map(|p| p.code.as_str()).collect();
    let in_b: HashSet<&str> = b.iter().map(|p| p.code.as_str()).collect();
    MatchOutcome {
        points: a.iter().filter(|p| in_b.contains(p.code.as_str())).cloned().collect(),
        divergence: in_a != in_b,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedEntry {
    pub rank: usize,
    pub code: String,
    pub distance_km: f64,
    pub probability: f64,
    pub record: Arc<MallRecord>,
}

#[derive(Debug, Clone)]
pub struct SkylineResult {
    pub entries: Vec<RankedEntry>,
    pub algorithm: String,
    pub spec: QuerySpec,
    pub divergence: bool,
    pub dominance_tests: u64,
}

impl SkylineResult {
    pub fn codes(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.code.as_str()).collect()
    }
}

/// Orders skyline members by distance (nearest first), then by higher
/// probability, then by code, and keeps the first `limit`.
pub fn rank_results(skyline: &[QueryPoint], matrix: &DistanceMatrix, limit: usize) -> Result<Vec<RankedEntry>> {
    if limit == 0 {
        return Err(EngineError::InvalidArgument("limit must be positive".into()));
    }
    let mut rows = skyline
        .iter()
        .map(|p| {
            let distance_km = matrix
                .get(&p.code)
                .ok_or_else(|| EngineError::MissingDistance(p.code.clone()))?;
            let record = p
                .source
                .clone()
                .ok_or_else(|| EngineError::MissingRecord(p.code.clone()))?;
            Ok((distance_km, record))
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|(da, ra), (db, rb)| {
        da.total_cmp(db)
            .then(rb.probability.total_cmp(&ra.probability))
            .then_with(|| ra.code.cmp(&rb.code))
    });
    Ok(rows
        .into_iter()
        .take(limit)
        .enumerate()
        .map(|(i, (distance_km, record))| RankedEntry {
            rank: i + 1,
            code: record.code.clone(),
            distance_km,
            probability: record.probability,
            record,
        })
        .collect())
}
