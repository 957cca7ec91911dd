//! Domain types shared by every skyline algorithm, and the dominance relation.
//!
//! A query is described by a [`QuerySpec`]: an ordered list of
//! `(Dimension, Direction)` pairs. Each mall is projected onto those
//! dimensions as a [`QueryPoint`]. All algorithms in [`crate::engine`] work on
//! oriented values, where [`orient`] turns every dimension into
//! "smaller is better".

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Number of facility categories tracked per mall.
pub const FACILITY_COUNT: usize = 15;

/// Facility categories in canonical order.
pub const FACILITY_CATEGORIES: [&str; FACILITY_COUNT] = [
    "Anchor",
    "Services",
    "Miscellaneous",
    "Hi-Tech",
    "Restaurants",
    "Specialty",
    "Barbers and Beauty",
    "Women's wear",
    "Men's wear",
    "Unisex and Family Clothing",
    "Shoes",
    "Children Apparel",
    "Gifts Cards and Books",
    "Jewelry",
    "Entertainment",
];

/// Column identifiers for the facility categories, index-aligned with
/// [`FACILITY_CATEGORIES`].
pub const FACILITY_COLUMNS: [&str; FACILITY_COUNT] = [
    "anchor",
    "services",
    "miscellaneous",
    "hi_tech",
    "restaurants",
    "specialty",
    "barbers_and_beauty",
    "womens_wear",
    "mens_wear",
    "unisex_and_family_clothing",
    "shoes",
    "children_apparel",
    "gifts_cards_and_books",
    "jewelry",
    "entertainment",
];

/// Default number of results returned by a query.
pub const DEFAULT_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("invalid geo point: lat {lat}, lng {lng}")]
    InvalidGeoPoint { lat: f64, lng: f64 },
    #[error("spec mismatch: expected {expected} dimensions, found {found}")]
    SpecMismatch { expected: usize, found: usize },
    #[error("invalid query spec: {0}")]
    InvalidSpec(String),
    #[error("unknown dimension `{0}`")]
    UnknownDimension(String),
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

/// A WGS84 latitude/longitude pair in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub lat: f64,
    pub lng: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lng: f64) -> Result<Self> {
        let point = GeoPoint { lat, lng };
        point.validate()?;
        Ok(point)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.lat.is_finite()
            && self.lng.is_finite()
            && (-90.0..=90.0).contains(&self.lat)
            && (-180.0..=180.0).contains(&self.lng);
        if ok {
            Ok(())
        } else {
            Err(ModelError::InvalidGeoPoint {
                lat: self.lat,
                lng: self.lng,
            })
        }
    }
}

impl FromStr for GeoPoint {
    type Err = ModelError;

    /// Parses `"lat,lng"`.
    fn from_str(s: &str) -> Result<Self> {
        let (lat, lng) = s
            .split_once(',')
            .ok_or_else(|| ModelError::InvalidValue(format!("expected `lat,lng`, got `{s}`")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| ModelError::InvalidValue(format!("not a number: `{v}`")))
        };
        GeoPoint::new(parse(lat)?, parse(lng)?)
    }
}

pub type Facilities = [u32; FACILITY_COUNT];

/// One shopping mall row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MallRecord {
    pub name: String,
    pub code: String,
    pub location: GeoPoint,
    pub store_number: u32,
    pub parking_space: u32,
    pub food_court: bool,
    pub avg_household_income: u64,
    pub population: u64,
    pub facilities: Facilities,
    /// Visit probability, carried through to results but never used for
    /// dominance.
    pub probability: f64,
}

impl MallRecord {
    /// Checks the per-record invariants (code uniqueness is a dataset concern).
    pub fn validate(&self) -> Result<()> {
        if self.code.trim().is_empty() {
            return Err(ModelError::InvalidValue("empty mall code".into()));
        }
        self.location.validate()?;
        if !(self.probability.is_finite() && (0.0..=1.0).contains(&self.probability)) {
            return Err(ModelError::InvalidValue(format!(
                "probability {} outside [0, 1]",
                self.probability
            )));
        }
        Ok(())
    }

    /// Raw (un-oriented) value of a non-distance dimension.
    ///
    /// Returns `None` for [`Dimension::Distance`], which depends on the query
    /// origin and lives in a distance matrix.
    pub fn attribute(&self, dim: Dimension) -> Option<f64> {
        Some(match dim {
            Dimension::Distance => return None,
            Dimension::StoreNumber => f64::from(self.store_number),
            Dimension::ParkingSpace => f64::from(self.parking_space),
            Dimension::FoodCourt => f64::from(u8::from(self.food_court)),
            Dimension::AvgHouseholdIncome => self.avg_household_income as f64,
            Dimension::Population => self.population as f64,
            Dimension::Facility(i) => f64::from(self.facilities[usize::from(i)]),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Min,
    Max,
}

impl FromStr for Direction {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "min" => Ok(Direction::Min),
            "max" => Ok(Direction::Max),
            other => Err(ModelError::InvalidValue(format!(
                "direction must be min or max, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Min => "MIN",
            Direction::Max => "MAX",
        })
    }
}

/// A query dimension. Facility dimensions carry the category index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    Distance,
    StoreNumber,
    ParkingSpace,
    FoodCourt,
    AvgHouseholdIncome,
    Population,
    Facility(u8),
}

impl Dimension {
    pub fn facility(index: usize) -> Result<Self> {
        if index < FACILITY_COUNT {
            Ok(Dimension::Facility(index as u8))
        } else {
            Err(ModelError::InvalidSpec(format!(
                "facility index {index} outside [0, {}]",
                FACILITY_COUNT - 1
            )))
        }
    }

    /// Column name used in CSV-derived tables and emitted SQL.
    pub fn column(&self) -> &'static str {
        match self {
            Dimension::Distance => "distance",
            Dimension::StoreNumber => "store_number",
            Dimension::ParkingSpace => "parking_space",
            Dimension::FoodCourt => "food_court",
            Dimension::AvgHouseholdIncome => "avg_household_income",
            Dimension::Population => "population",
            Dimension::Facility(i) => FACILITY_COLUMNS[usize::from(*i)],
        }
    }

    /// Every dimension a mall can be projected onto, in column order.
    pub fn all() -> Vec<Dimension> {
        let mut dims = vec![
            Dimension::Distance,
            Dimension::StoreNumber,
            Dimension::ParkingSpace,
            Dimension::FoodCourt,
            Dimension::AvgHouseholdIncome,
            Dimension::Population,
        ];
        dims.extend((0..FACILITY_COUNT as u8).map(Dimension::Facility));
        dims
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column())
    }
}

impl FromStr for Dimension {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        Dimension::all()
            .into_iter()
            .find(|d| d.column() == key)
            .ok_or_else(|| ModelError::UnknownDimension(s.to_string()))
    }
}

/// A preference query: origin, ordered dimensions and result limit.
#[derive(Debug, Clone, PartialEq)]
pub struct QuerySpec {
    pub origin: GeoPoint,
    dimensions: Vec<(Dimension, Direction)>,
    selected_facilities: Vec<usize>,
    limit: usize,
}

impl QuerySpec {
    /// Builds a spec from an explicit dimension list.
    pub fn new(origin: GeoPoint, dimensions: Vec<(Dimension, Direction)>, limit: usize) -> Result<Self> {
        origin.validate()?;
        if dimensions.is_empty() {
            return Err(ModelError::InvalidSpec("no dimensions".into()));
        }
        if limit == 0 {
            return Err(ModelError::InvalidSpec("limit must be positive".into()));
        }
        let mut seen = HashSet::new();
        for (dim, _) in &dimensions {
            if let Dimension::Facility(i) = dim {
                Dimension::facility(usize::from(*i))?;
            }
            if !seen.insert(*dim) {
                return Err(ModelError::InvalidSpec(format!("duplicate dimension `{dim}`")));
            }
        }
        let selected_facilities = dimensions
            .iter()
            .filter_map(|(d, _)| match d {
                Dimension::Facility(i) => Some(usize::from(*i)),
                _ => None,
            })
            .collect();
        Ok(QuerySpec {
            origin,
            dimensions,
            selected_facilities,
            limit,
        })
    }

    /// The default preference query: distance MIN, store_number MAX,
    /// parking_space MAX, avg_household_income MIN, population MIN, then
    /// food_court MAX when requested and one MAX dimension per selected
    /// facility category.
    pub fn canonical(
        origin: GeoPoint,
        selected_facilities: &[usize],
        include_food_court: bool,
        limit: usize,
    ) -> Result<Self> {
        let mut dims = vec![
            (Dimension::Distance, Direction::Min),
            (Dimension::StoreNumber, Direction::Max),
            (Dimension::ParkingSpace, Direction::Max),
            (Dimension::AvgHouseholdIncome, Direction::Min),
            (Dimension::Population, Direction::Min),
        ];
        if include_food_court {
            dims.push((Dimension::FoodCourt, Direction::Max));
        }
        for &idx in selected_facilities {
            dims.push((Dimension::facility(idx)?, Direction::Max));
        }
        QuerySpec::new(origin, dims, limit)
    }

    pub fn dimensions(&self) -> &[(Dimension, Direction)] {
        &self.dimensions
    }

    pub fn directions(&self) -> impl Iterator<Item = Direction> + '_ {
        self.dimensions.iter().map(|(_, d)| *d)
    }

    pub fn len(&self) -> usize {
        self.dimensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dimensions.is_empty()
    }

    pub fn selected_facilities(&self) -> &[usize] {
        &self.selected_facilities
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn uses_distance(&self) -> bool {
        self.dimensions.iter().any(|(d, _)| *d == Dimension::Distance)
    }
}

/// A mall projected onto the dimensions of a [`QuerySpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct QueryPoint {
    pub code: String,
    /// Raw values, one per spec dimension, in spec order.
    pub values: Vec<f64>,
    pub source: Option<Arc<MallRecord>>,
}

impl QueryPoint {
    /// A detached point with no backing record.
    pub fn new(code: impl Into<String>, values: Vec<f64>) -> Self {
        QueryPoint {
            code: code.into(),
            values,
            source: None,
        }
    }

    /// Projects `record` onto `spec`. `distance_km` fills the distance slot
    /// and is required when the spec uses distance.
    pub fn project(record: Arc<MallRecord>, spec: &QuerySpec, distance_km: Option<f64>) -> Result<Self> {
        let values = spec
            .dimensions()
            .iter()
            .map(|(dim, _)| match dim {
                Dimension::Distance => distance_km.ok_or_else(|| {
                    ModelError::InvalidValue(format!("no distance for mall {}", record.code))
                }),
                other => Ok(record.attribute(*other).expect("non-distance dimension")),
            })
            .collect::<Result<Vec<_>>>()?;
        let point = QueryPoint {
            code: record.code.clone(),
            values,
            source: Some(record),
        };
        point.check(spec)?;
        Ok(point)
    }

    /// Verifies that the point conforms to `spec`.
    pub fn check(&self, spec: &QuerySpec) -> Result<()> {
        if self.values.len() != spec.len() {
            return Err(ModelError::SpecMismatch {
                expected: spec.len(),
                found: self.values.len(),
            });
        }
        if let Some(v) = self.values.iter().find(|v| !v.is_finite()) {
            return Err(ModelError::InvalidValue(format!(
                "non-finite value {v} in point {}",
                self.code
            )));
        }
        Ok(())
    }

    /// Values in minimize-everything form.
    pub fn oriented(&self, spec: &QuerySpec) -> Result<Vec<f64>> {
        self.check(spec)?;
        self.values
            .iter()
            .zip(spec.directions())
            .map(|(&v, d)| orient(v, d))
            .collect()
    }
}

/// Maps a raw value into minimize-everything form.
pub fn orient(value: f64, direction: Direction) -> Result<f64> {
    if !value.is_finite() {
        return Err(ModelError::InvalidValue(format!("non-finite value {value}")));
    }
    Ok(match direction {
        Direction::Min => value,
        // 0.0 - x keeps orient(0, MAX) == +0.0
        Direction::Max => 0.0 - value,
    })
}

/// Strict dominance on already-oriented vectors: `a <= b` everywhere and
/// `a < b` somewhere.
#[inline]
pub fn dominates_oriented(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

/// True iff `a` dominates `b` under `spec`.
pub fn dominates(a: &QueryPoint, b: &QueryPoint, spec: &QuerySpec) -> Result<bool> {
    Ok(dominates_oriented(&a.oriented(spec)?, &b.oriented(spec)?))
}

/// Per-dimension `(min, max)` of oriented values over a point set.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreBounds {
    bounds: Vec<(f64, f64)>,
}

impl ScoreBounds {
    pub fn from_points(points: &[QueryPoint], spec: &QuerySpec) -> Result<Self> {
        let oriented = points
            .iter()
            .map(|p| p.oriented(spec))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_oriented(&oriented, spec.len()))
    }

    pub fn from_oriented(points: &[Vec<f64>], dims: usize) -> Self {
        let mut bounds = vec![(f64::INFINITY, f64::NEG_INFINITY); dims];
        for p in points {
            for (b, &v) in bounds.iter_mut().zip(p) {
                b.0 = b.0.min(v);
                b.1 = b.1.max(v);
            }
        }
        if points.is_empty() {
            bounds.iter_mut().for_each(|b| *b = (0.0, 0.0));
        }
        ScoreBounds { bounds }
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    /// Sum of min-max scaled oriented values. Degenerate dimensions add 0.
    pub fn score_oriented(&self, oriented: &[f64]) -> f64 {
        self.bounds
            .iter()
            .zip(oriented)
            .map(|(&(lo, hi), &v)| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 })
            .sum()
    }
}

/// Dominance-monotone score used to order points before a sort-filter pass.
pub fn monotone_score(p: &QueryPoint, spec: &QuerySpec, bounds: &ScoreBounds) -> Result<f64> {
    if bounds.len() != spec.len() {
        return Err(ModelError::SpecMismatch {
            expected: spec.len(),
            found: bounds.len(),
        });
    }
    Ok(bounds.score_oriented(&p.oriented(spec)?))
}
