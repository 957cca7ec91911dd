//! Sort-filter skyline.
//!
//! Points are sorted by a dominance-monotone score so that no point can be
//! dominated by one that comes after it. A single pass then only checks
//! each point against the members already accepted.

use std::cmp::Ordering;

use crate::model::{dominates_oriented, QueryPoint, QuerySpec, ScoreBounds};

use super::{Algorithm, Result};

pub fn skyline_sfs(points: &[QueryPoint], spec: &QuerySpec) -> Result<Vec<QueryPoint>> {
    Ok(Algorithm::Sfs.run(points, spec)?.points)
}

/// Input positions in the order the filtering pass visits them: ascending
/// score, then oriented values lexicographically, then code.
pub fn sfs_order(points: &[QueryPoint], spec: &QuerySpec) -> Result<Vec<usize>> {
    let oriented = points
        .iter()
        .map(|p| p.oriented(spec))
        .collect::<Result<Vec<_>, _>>()?;
    let codes: Vec<&str> = points.iter().map(|p| p.code.as_str()).collect();
    Ok(sorted_order(&oriented, &codes))
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn sorted_order(points: &[Vec<f64>], codes: &[&str]) -> Vec<usize> {
    let dims = points.first().map_or(0, Vec::len);
    let bounds = ScoreBounds::from_oriented(points, dims);
    let scores: Vec<f64> = points.iter().map(|p| bounds.score_oriented(p)).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    // The lexicographic key keeps a dominator ahead of what it dominates
    // even when rounding makes their scores equal.
    order.sort_by(|&a, &b| {
        scores[a]
            .total_cmp(&scores[b])
            .then_with(|| lexicographic(&points[a], &points[b]))
            .then_with(|| codes[a].cmp(codes[b]))
    });
    order
}

pub(super) fn sfs_indices(points: &[Vec<f64>], codes: &[&str], tests: &mut u64) -> Vec<usize> {
    let mut accepted: Vec<usize> = Vec::new();
    for i in sorted_order(points, codes) {
        let dominated = accepted.iter().any(|&s| {
            *tests += 1;
            dominates_oriented(&points[s], &points[i])
        });
        if !dominated {
            accepted.push(i);
        }
    }
    accepted.sort_unstable();
    accepted
}
