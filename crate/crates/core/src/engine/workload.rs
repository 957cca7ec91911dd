//! Seeded random point sets for benchmarks and equivalence testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Dimension, Direction, GeoPoint, QueryPoint, QuerySpec, FACILITY_COUNT};

use super::{EngineError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Workload {
    pub n: usize,
    pub dims: usize,
    pub seed: u64,
    /// Probability that a point copies the vector of an earlier point.
    pub duplicate_rate: f64,
    /// Values are integers drawn from `0..=max_value`; small values produce
    /// many ties.
    pub max_value: u32,
}

impl Workload {
    pub fn new(n: usize, dims: usize, seed: u64) -> Self {
        Workload {
            n,
            dims,
            seed,
            duplicate_rate: 0.05,
            max_value: 1000,
        }
    }

    /// Generates the points and a spec with randomly mixed directions.
    /// Points are detached (no source record) and coded `P0`, `P1`, ...
    pub fn generate(&self) -> Result<(Vec<QueryPoint>, QuerySpec)> {
        if self.dims == 0 || self.dims > FACILITY_COUNT {
            return Err(EngineError::InvalidArgument(format!(
                "dimensions must be in 1..={FACILITY_COUNT}, got {}",
                self.dims
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let dimensions = (0..self.dims)
            .map(|i| {
                let dir = if rng.random_bool(0.5) { Direction::Min } else { Direction::Max };
                (Dimension::Facility(i as u8), dir)
            })
            .collect();
        let spec = QuerySpec::new(GeoPoint { lat: 0.0, lng: 0.0 }, dimensions, 10)?;

        let mut points: Vec<QueryPoint> = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let values = if i > 0 && rng.random_bool(self.duplicate_rate) {
                points[rng.random_range(0..i)].values.clone()
            } else {
                (0..self.dims)
                    .map(|_| f64::from(rng.random_range(0..=self.max_value)))
                    .collect()
            };
            points.push(QueryPoint::new(format!("P{i}"), values));
        }
        Ok((points, spec))
    }
}
