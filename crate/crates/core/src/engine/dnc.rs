//! Divide-and-conquer skyline.
//!
//! Splits at the median of the first oriented dimension, solves each half
//! recursively and merges by cross-eliminating the two partial skylines.
//! Halves are solved in parallel once they are large enough to pay for it;
//! the merge is order-independent so the result does not depend on
//! scheduling.

use crate::model::{dominates_oriented, QueryPoint, QuerySpec};

use super::oracle::oracle_subset;
use super::{Algorithm, Result};

/// Groups at or below this size are solved exhaustively.
pub const DNC_BASE_CASE: usize = 32;

const PARALLEL_THRESHOLD: usize = 2048;

pub fn skyline_dnc(points: &[QueryPoint], spec: &QuerySpec) -> Result<Vec<QueryPoint>> {
    Ok(Algorithm::Dnc.run(points, spec)?.points)
}

pub(super) fn dnc_indices(points: &[Vec<f64>], tests: &mut u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    // Sorting once up front makes every median split a slice split.
    order.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]).then(a.cmp(&b)));
    let (mut skyline, count) = solve(points, &order);
    *tests += count;
    skyline.sort_unstable();
    skyline
}

fn solve(points: &[Vec<f64>], group: &[usize]) -> (Vec<usize>, u64) {
    if group.len() <= DNC_BASE_CASE {
        let mut tests = 0;
        let sky = oracle_subset(points, group, &mut tests);
        return (sky, tests);
    }
    let (left, right) = group.split_at(group.len() / 2);
    let ((ls, lt), (rs, rt)) = if group.len() >= PARALLEL_THRESHOLD {
        rayon::join(|| solve(points, left), || solve(points, right))
    } else {
        (solve(points, left), solve(points, right))
    };
    let (merged, mt) = merge(points, &ls, &rs);
    (merged, lt + rt + mt)
}

fn merge(points: &[Vec<f64>], left: &[usize], right: &[usize]) -> (Vec<usize>, u64) {
    let mut tests = 0;
    let mut survivors_of = |mine: &[usize], theirs: &[usize]| -> Vec<usize> {
        mine.iter()
            .copied()
            .filter(|&i| {
                !theirs.iter().any(|&j| {
                    tests += 1;
                    dominates_oriented(&points[j], &points[i])
                })
            })
            .collect()
    };
    let mut out = survivors_of(left, right);
    out.extend(survivors_of(right, left));
    (out, tests)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::oracle::oracle_indices;

    #[test]
    fn base_case_matches_single_oracle_call() {
        let pts: Vec<Vec<f64>> = (0..DNC_BASE_CASE)
            .map(|i| vec![(i % 7) as f64, (i % 5) as f64, ((i * 3) % 4) as f64])
            .collect();
        let mut a = 0;
        let mut b = 0;
        assert_eq!(dnc_indices(&pts, &mut a), oracle_indices(&pts, &mut b));
    }

    #[test]
    fn constant_first_dimension() {
        // Every split lands inside a run of equal keys.
        let pts: Vec<Vec<f64>> = (0..200).map(|i| vec![1.0, ((i * 37) % 101) as f64]).collect();
        let mut t = 0;
        assert_eq!(dnc_indices(&pts, &mut 0), oracle_indices(&pts, &mut t));
    }
}
