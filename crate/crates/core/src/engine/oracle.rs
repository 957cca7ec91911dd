use crate::model::{dominates_oriented, QueryPoint, QuerySpec};

use super::{Algorithm, Result};

/// Exhaustive pairwise skyline. A point is kept iff no other point
/// dominates it. Quadratic; this is the reference the other algorithms are
/// checked against.
pub fn skyline_oracle(points: &[QueryPoint], spec: &QuerySpec) -> Result<Vec<QueryPoint>> {
    Ok(Algorithm::Oracle.run(points, spec)?.points)
}

pub(super) fn oracle_indices(points: &[Vec<f64>], tests: &mut u64) -> Vec<usize> {
    let all: Vec<usize> = (0..points.len()).collect();
    oracle_subset(points, &all, tests)
}

/// Exhaustive skyline restricted to the points named by `subset`.
pub(super) fn oracle_subset(points: &[Vec<f64>], subset: &[usize], tests: &mut u64) -> Vec<usize> {
    subset
        .iter()
        .copied()
        .filter(|&i| {
            !subset.iter().any(|&j| {
                if i == j {
                    return false;
                }
                *tests += 1;
                dominates_oriented(&points[j], &points[i])
            })
        })
        .collect()
}
