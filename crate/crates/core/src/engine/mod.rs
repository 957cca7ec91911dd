//! Skyline algorithms, SQL emission, two-path matching and ranking.
//!
//! Every algorithm returns the members of the skyline in input order and
//! produces exactly the same set as [`skyline_oracle`]. The `*_counted`
//! variants also report how many pairwise dominance tests were performed.

mod bnl;
mod dnc;
mod oracle;
mod ranking;
mod sfs;
mod sql;
pub mod workload;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geo::DistanceMatrix;
use crate::ingest::Dataset;
use crate::model::{ModelError, QueryPoint, QuerySpec};

pub use bnl::{skyline_bnl, BnlWindow, DEFAULT_WINDOW_CAPACITY};
pub use dnc::{skyline_dnc, DNC_BASE_CASE};
pub use oracle::skyline_oracle;
pub use ranking::{match_results, rank_results, MatchOutcome, RankedEntry, SkylineResult};
pub use sfs::{skyline_sfs, sfs_order};
pub use sql::{emit_skyline_operator, emit_skyline_sql, emit_skyline_sql_for, validate_identifier};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid SQL identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("query spec has no dimensions")]
    EmptySpec,
    #[error("no distance for mall `{0}`")]
    MissingDistance(String),
    #[error("point `{0}` has no source record")]
    MissingRecord(String),
    #[error("unknown algorithm `{0}` (expected oracle, bnl, sfs or dnc)")]
    UnknownAlgorithm(String),
}

pub type Result<T, E = EngineError> = std::result::Result<T, E>;

/// Skyline algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    Oracle,
    Bnl { window_capacity: usize },
    #[default]
    Sfs,
    Dnc,
}

impl Algorithm {
    pub const ALL_TAGS: [&'static str; 4] = ["oracle", "bnl", "sfs", "dnc"];

    pub fn tag(&self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::Bnl { .. } => "bnl",
            Algorithm::Sfs => "sfs",
            Algorithm::Dnc => "dnc",
        }
    }

    pub fn run(&self, points: &[QueryPoint], spec: &QuerySpec) -> Result<SkylineRun> {
        let oriented = orient_all(points, spec)?;
        let mut tests = 0u64;
        let indices = match *self {
            Algorithm::Oracle => oracle::oracle_indices(&oriented, &mut tests),
            Algorithm::Bnl { window_capacity } => bnl::bnl_indices(&oriented, window_capacity, &mut tests)?,
            Algorithm::Sfs => {
                let codes: Vec<&str> = points.iter().map(|p| p.code.as_str()).collect();
                sfs::sfs_indices(&oriented, &codes, &mut tests)
            }
            Algorithm::Dnc => dnc::dnc_indices(&oriented, &mut tests),
        };
        Ok(SkylineRun {
            points: indices.into_iter().map(|i| points[i].clone()).collect(),
            dominance_tests: tests,
            algorithm: self.tag(),
        })
    }
}


impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Algorithm::Oracle),
            "bnl" => Ok(Algorithm::Bnl {
                window_capacity: DEFAULT_WINDOW_CAPACITY,
            }),
            "sfs" => Ok(Algorithm::Sfs),
            "dnc" => Ok(Algorithm::Dnc),
            other => Err(EngineError::UnknownAlgorithm(other.to_string())),
        }
    }
}

/// Output of one algorithm run.
#[derive(Debug, Clone)]
pub struct SkylineRun {
    /// Skyline members in input order.
    pub points: Vec<QueryPoint>,
    pub dominance_tests: u64,
    pub algorithm: &'static str,
}

impl SkylineRun {
    pub fn codes(&self) -> Vec<&str> {
        self.points.iter().map(|p| p.code.as_str()).collect()
    }
}

fn orient_all(points: &[QueryPoint], spec: &QuerySpec) -> Result<Vec<Vec<f64>>> {
    Ok(points
        .iter()
        .map(|p| p.oriented(spec))
        .collect::<Result<Vec<_>, _>>()?)
}

/// Projects every mall in `dataset` onto `spec`, taking distances from
/// `matrix`.
pub fn project_dataset(dataset: &Dataset, spec: &QuerySpec, matrix: &DistanceMatrix) -> Result<Vec<QueryPoint>> {
    dataset
        .records
        .iter()
        .map(|r| {
            let distance = matrix.get(&r.code);
            if spec.uses_distance() && distance.is_none() {
                return Err(EngineError::MissingDistance(r.code.clone()));
            }
            Ok(QueryPoint::project(r.clone(), spec, distance)?)
        })
        .collect()
}

/// Runs `algorithm` and the exhaustive oracle, intersects the two answers
/// and ranks the result by distance.
pub fn run_query(
    dataset: &Dataset,
    spec: &QuerySpec,
    matrix: &DistanceMatrix,
    algorithm: Algorithm,
) -> Result<SkylineResult> {
    let points = project_dataset(dataset, spec, matrix)?;
    let primary = algorithm.run(&points, spec)?;
    let check = Algorithm::Oracle.run(&points, spec)?;
    let matched = match_results(&primary.points, &check.points);
    if matched.divergence {
        tracing::warn!(algorithm = %algorithm, "skyline paths diverged");
    }
    let entries = rank_results(&matched.points, matrix, spec.limit())?;
    Ok(SkylineResult {
        entries,
        algorithm: algorithm.tag().to_string(),
        spec: spec.clone(),
        divergence: matched.divergence,
        dominance_tests: primary.dominance_tests,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_tags() {
        for tag in Algorithm::ALL_TAGS {
            assert_eq!(tag.parse::<Algorithm>().unwrap().tag(), tag);
        }
        assert_eq!(
            "bbs".parse::<Algorithm>(),
            Err(EngineError::UnknownAlgorithm("bbs".into()))
        );
    }
}
