//! Block-nested-loops skyline with a bounded window.
//!
//! Points stream past a window of mutually non-dominating candidates. When
//! the window is full, surviving points spill to an overflow list that is
//! replayed in the next pass. Every window insertion and overflow write gets
//! a timestamp; a window entry is final once it has been compared with every
//! point that was spilled before it was inserted.

use crate::model::{dominates_oriented, QueryPoint, QuerySpec};

use super::{Algorithm, EngineError, Result};

pub const DEFAULT_WINDOW_CAPACITY: usize = 64;

pub fn skyline_bnl(points: &[QueryPoint], spec: &QuerySpec, window_capacity: usize) -> Result<Vec<QueryPoint>> {
    Ok(Algorithm::Bnl { window_capacity }.run(points, spec)?.points)
}

#[derive(Debug, Clone, Copy)]
struct Stamped {
    index: usize,
    stamp: u64,
}

/// In-memory candidate window.
#[derive(Debug)]
pub struct BnlWindow {
    capacity: usize,
    contents: Vec<Stamped>,
}

impl BnlWindow {
    pub fn new(capacity: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(EngineError::InvalidArgument("window capacity must be at least 1".into()));
        }
        Ok(BnlWindow {
            capacity,
            contents: Vec::with_capacity(capacity.min(1024)),
        })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.contents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contents.is_empty()
    }

    fn is_full(&self) -> bool {
        self.contents.len() >= self.capacity
    }

    /// Indices of the current candidates.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.contents.iter().map(|s| s.index)
    }

    /// Compares `candidate` with the window: returns `true` if some member
    /// dominates it, otherwise evicts every member it dominates.
    fn screen(&mut self, points: &[Vec<f64>], candidate: usize, tests: &mut u64) -> bool {
        let p = &points[candidate];
        let mut dominated = false;
        self.contents.retain(|w| {
            if dominated {
                return true;
            }
            *tests += 1;
            let q = &points[w.index];
            if dominates_oriented(q, p) {
                dominated = true;
                return true;
            }
            *tests += 1;
            !dominates_oriented(p, q)
        });
        dominated
    }

    /// Moves entries stamped before `before` to `out`.
    fn flush_older(&mut self, before: u64, out: &mut Vec<usize>) {
        self.contents.retain(|w| {
            if w.stamp < before {
                out.push(w.index);
                false
            } else {
                true
            }
        });
    }
}

pub(super) fn bnl_indices(points: &[Vec<f64>], capacity: usize, tests: &mut u64) -> Result<Vec<usize>> {
    let mut window = BnlWindow::new(capacity)?;
    let mut clock = 0u64;
    let mut output = Vec::new();

    let mut input: Vec<Stamped> = (0..points.len()).map(|index| Stamped { index, stamp: 0 }).collect();
    let mut first_pass = true;

    while !input.is_empty() {
        let mut overflow = Vec::new();
        for item in input {
            if !first_pass {
                // Window entries inserted before this point was spilled have
                // now seen every earlier spilled point.
                window.flush_older(item.stamp, &mut output);
            }
            if window.screen(points, item.index, tests) {
                continue;
            }
            clock += 1;
            let stamped = Stamped {
                index: item.index,
                stamp: clock,
            };
            if window.is_full() {
                overflow.push(stamped);
            } else {
                window.contents.push(stamped);
            }
        }
        let cutoff = overflow.first().map_or(u64::MAX, |s| s.stamp);
        window.flush_older(cutoff, &mut output);
        input = overflow;
        first_pass = false;
    }
    debug_assert!(window.is_empty());

    output.sort_unstable();
    Ok(output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::oracle::oracle_indices;

    fn run(points: &[Vec<f64>], cap: usize) -> Vec<usize> {
        bnl_indices(points, cap, &mut 0).unwrap()
    }

    #[test]
    fn zero_capacity() {
        assert!(matches!(
            bnl_indices(&[vec![1.0]], 0, &mut 0),
            Err(EngineError::InvalidArgument(_))
        ));
    }

    #[test]
    fn empty_input() {
        assert!(run(&[], 1).is_empty());
    }

    #[test]
    fn anti_chain_with_tiny_window() {
        // Nothing dominates anything: every pass admits one point.
        let pts: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64, -(i as f64)]).collect();
        assert_eq!(run(&pts, 1), (0..20).collect::<Vec<_>>());
        assert_eq!(run(&pts, 3), (0..20).collect::<Vec<_>>());
    }

    #[test]
    fn dominator_arrives_last() {
        let mut pts: Vec<Vec<f64>> = (0..10).map(|i| vec![5.0 + i as f64, 15.0 - i as f64]).collect();
        pts.push(vec![0.0, 0.0]);
        for cap in 1..5 {
            assert_eq!(run(&pts, cap), vec![10], "capacity {cap}");
        }
    }

    #[test]
    fn spilled_point_dominates_later_window_entry() {
        // Spills, evictions and a duplicate pair across window sizes.
        let pts = vec![vec![5.0, 1.0], vec![1.0, 5.0], vec![2.0, 2.0], vec![3.0, 3.0], vec![2.0, 2.0]];
        let mut t = 0;
        let expected = oracle_indices(&pts, &mut t);
        for cap in 1..=5 {
            assert_eq!(run(&pts, cap), expected, "capacity {cap}");
        }
    }
}
