//! CSV ingestion, facility summation and the seeded synthetic dataset.
//!
//! File layout (UTF-8, header required, LF or CRLF):
//!
//! ```text
//! Mall,Code,Lat,Lng,StoreNumber,ParkingSpace,FoodCourt,AvgHouseholdIncome,Population,Facilities,Probability
//! S1,OH1,41.502744,-81.502225,16,1042,0,71943,211813,"[3,3,1,0,0,0,0,0,0,0,0,0,0,0,0]",0.5
//! ```

use std::collections::{BTreeMap, HashSet};
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;
use std::time::SystemTime;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Facilities, GeoPoint, MallRecord, FACILITY_CATEGORIES, FACILITY_COUNT};

pub const CSV_HEADER: [&str; 11] = [
    "Mall",
    "Code",
    "Lat",
    "Lng",
    "StoreNumber",
    "ParkingSpace",
    "FoodCourt",
    "AvgHouseholdIncome",
    "Population",
    "Facilities",
    "Probability",
];

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("row {row}: schema error: {detail}")]
    Schema { row: usize, detail: String },
    #[error("row {row}: facilities has {len} entries, expected {FACILITY_COUNT}")]
    FacilityLength { row: usize, len: usize },
    #[error("row {row}: invalid field `{field}`: {detail}")]
    Validation {
        row: usize,
        field: &'static str,
        detail: String,
    },
    #[error("dataset has no data rows")]
    EmptyDataset,
    #[error("unknown facility category `{0}`")]
    UnknownCategory(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Per-category store counts before summation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawFacilityReport {
    pub categories: BTreeMap<String, Vec<u32>>,
}

impl RawFacilityReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, category: &str, counts: &[u32]) -> Self {
        self.categories
            .entry(category.to_string())
            .or_default()
            .extend_from_slice(counts);
        self
    }
}

/// Position of a category name in the canonical order (case-insensitive).
pub fn category_index(name: &str) -> Option<usize> {
    let name = name.trim();
    FACILITY_CATEGORIES
        .iter()
        .position(|c| c.eq_ignore_ascii_case(name))
}

/// Sums each category's counts into the canonical 15-slot vector.
pub fn facility_totals(report: &RawFacilityReport) -> Result<Facilities, IngestError> {
    let mut totals = [0u32; FACILITY_COUNT];
    for (name, counts) in &report.categories {
        let idx = category_index(name).ok_or_else(|| IngestError::UnknownCategory(name.clone()))?;
        totals[idx] = counts.iter().sum();
    }
    Ok(totals)
}

/// An immutable, validated collection of malls.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub records: Vec<Arc<MallRecord>>,
    pub source_path: String,
    pub loaded_at: SystemTime,
}

impl Dataset {
    /// Validates `records` and wraps them.
    pub fn from_records(records: Vec<MallRecord>, source_path: impl Into<String>) -> Result<Self, IngestError> {
        if records.is_empty() {
            return Err(IngestError::EmptyDataset);
        }
        let mut seen = HashSet::new();
        for (i, r) in records.iter().enumerate() {
            let row = i + 1;
            r.validate().map_err(|e| IngestError::Validation {
                row,
                field: "record",
                detail: e.to_string(),
            })?;
            if !seen.insert(r.code.as_str()) {
                return Err(IngestError::Validation {
                    row,
                    field: "Code",
                    detail: format!("duplicate code `{}`", r.code),
                });
            }
        }
        Ok(Dataset {
            records: records.into_iter().map(Arc::new).collect(),
            source_path: source_path.into(),
            loaded_at: SystemTime::now(),
        })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, code: &str) -> Option<&Arc<MallRecord>> {
        self.records.iter().find(|r| r.code == code)
    }
}

pub fn load_mall_csv(path: impl AsRef<Path>) -> Result<Dataset, IngestError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    let mut dataset = parse_mall_csv(file)?;
    dataset.source_path = path.display().to_string();
    Ok(dataset)
}

/// Parses the mall CSV format, reporting the first problem found.
pub fn parse_mall_csv<R: Read>(reader: R) -> Result<Dataset, IngestError> {
    let (records, mut errors) = parse_rows(reader)?;
    if let Some(first) = errors.drain(..).next() {
        return Err(first);
    }
    Dataset::from_records(records, "<memory>")
}

/// Parses every row and collects all row-level errors instead of stopping
/// at the first. Header errors are still returned immediately.
pub fn validate_mall_csv<R: Read>(reader: R) -> Result<(usize, Vec<IngestError>), IngestError> {
    let (records, errors) = parse_rows(reader)?;
    if records.is_empty() && errors.is_empty() {
        return Err(IngestError::EmptyDataset);
    }
    Ok((records.len(), errors))
}

fn parse_rows<R: Read>(reader: R) -> Result<(Vec<MallRecord>, Vec<IngestError>), IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);

    let header = rdr.headers()?.clone();
    let names: Vec<&str> = header.iter().map(str::trim).collect();
    if names != CSV_HEADER {
        return Err(IngestError::Schema {
            row: 0,
            detail: format!("expected header `{}`, got `{}`", CSV_HEADER.join(","), names.join(",")),
        });
    }

    let mut records = Vec::new();
    let mut errors = Vec::new();
    let mut seen = HashSet::new();
    for (i, row) in rdr.records().enumerate() {
        let row_no = i + 1;
        let row = row?;
        match parse_row(&row, row_no) {
            Ok(record) => {
                if seen.insert(record.code.clone()) {
                    records.push(record);
                } else {
                    errors.push(IngestError::Validation {
                        row: row_no,
                        field: "Code",
                        detail: format!("duplicate code `{}`", record.code),
                    });
                }
            }
            Err(e) => errors.push(e),
        }
    }
    if records.is_empty() && errors.is_empty() {
        return Err(IngestError::EmptyDataset);
    }
    Ok((records, errors))
}

fn parse_row(row: &csv::StringRecord, row_no: usize) -> Result<MallRecord, IngestError> {
    if row.len() != CSV_HEADER.len() {
        return Err(IngestError::Schema {
            row: row_no,
            detail: format!("expected {} columns, found {}", CSV_HEADER.len(), row.len()),
        });
    }
    let field = |i: usize| row.get(i).unwrap_or("").trim();
    let invalid = |field: &'static str, detail: String| IngestError::Validation {
        row: row_no,
        field,
        detail,
    };

    fn num<T: std::str::FromStr>(s: &str) -> Option<T> {
        s.parse().ok()
    }

    let name = row.get(0).unwrap_or("").to_string();
    let code = row.get(1).unwrap_or("").to_string();
    if code.trim().is_empty() {
        return Err(invalid("Code", "empty code".into()));
    }
    let lat: f64 = num(field(2)).ok_or_else(|| invalid("Lat", format!("not a number: `{}`", field(2))))?;
    let lng: f64 = num(field(3)).ok_or_else(|| invalid("Lng", format!("not a number: `{}`", field(3))))?;
    if !(lat.is_finite() && (-90.0..=90.0).contains(&lat)) {
        return Err(invalid("Lat", format!("{lat} outside [-90, 90]")));
    }
    if !(lng.is_finite() && (-180.0..=180.0).contains(&lng)) {
        return Err(invalid("Lng", format!("{lng} outside [-180, 180]")));
    }
    let store_number = num(field(4))
        .ok_or_else(|| invalid("StoreNumber", format!("not a non-negative integer: `{}`", field(4))))?;
    let parking_space = num(field(5))
        .ok_or_else(|| invalid("ParkingSpace", format!("not a non-negative integer: `{}`", field(5))))?;
    let food_court = match field(6) {
        "0" => false,
        "1" => true,
        other => return Err(invalid("FoodCourt", format!("expected 0 or 1, got `{other}`"))),
    };
    let avg_household_income = num(field(7)).ok_or_else(|| {
        invalid("AvgHouseholdIncome", format!("not a non-negative integer: `{}`", field(7)))
    })?;
    let population = num(field(8))
        .ok_or_else(|| invalid("Population", format!("not a non-negative integer: `{}`", field(8))))?;
    let facilities = parse_facilities(field(9), row_no)?;
    let probability: f64 = num(field(10))
        .ok_or_else(|| invalid("Probability", format!("not a number: `{}`", field(10))))?;
    if !(probability.is_finite() && (0.0..=1.0).contains(&probability)) {
        return Err(invalid("Probability", format!("{probability} outside [0, 1]")));
    }

    Ok(MallRecord {
        name,
        code,
        location: GeoPoint { lat, lng },
        store_number,
        parking_space,
        food_court,
        avg_household_income,
        population,
        facilities,
        probability,
    })
}

fn parse_facilities(cell: &str, row: usize) -> Result<Facilities, IngestError> {
    let inner = cell
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| IngestError::Validation {
            row,
            field: "Facilities",
            detail: format!("expected bracketed list, got `{cell}`"),
        })?;
    let values = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|v| {
                v.trim().parse::<u32>().map_err(|_| IngestError::Validation {
                    row,
                    field: "Facilities",
                    detail: format!("not a non-negative integer: `{}`", v.trim()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    values
        .as_slice()
        .try_into()
        .map_err(|_| IngestError::FacilityLength { row, len: values.len() })
}

/// Writes `dataset` in the CSV format read by [`parse_mall_csv`].
pub fn write_mall_csv<W: Write>(dataset: &Dataset, writer: W) -> Result<(), IngestError> {
    let mut wtr = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(writer);
    wtr.write_record(CSV_HEADER)?;
    for r in &dataset.records {
        let facilities = format!(
            "[{}]",
            r.facilities.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        );
        wtr.write_record([
            r.name.clone(),
            r.code.clone(),
            r.location.lat.to_string(),
            r.location.lng.to_string(),
            r.store_number.to_string(),
            r.parking_space.to_string(),
            u8::from(r.food_court).to_string(),
            r.avg_household_income.to_string(),
            r.population.to_string(),
            facilities,
            r.probability.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

fn round_to(v: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (v * scale).round() / scale
}

/// Deterministic Northeast-Ohio-like dataset of `n` malls.
pub fn generate_synthetic_dataset(n: usize, seed: u64) -> Result<Dataset, IngestError> {
    if n == 0 {
        return Err(IngestError::InvalidArgument("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let records = (1..=n)
        .map(|i| {
            let mut facilities = [0u32; FACILITY_COUNT];
            for f in facilities.iter_mut() {
                *f = rng.random_range(0..=10);
            }
            MallRecord {
                name: format!("Synthetic Mall {i}"),
                code: format!("OH{i}"),
                location: GeoPoint {
                    lat: round_to(rng.random_range(40.8..=41.8), 6),
                    lng: round_to(rng.random_range(-82.2..=-81.0), 6),
                },
                store_number: rng.random_range(5..=60),
                parking_space: rng.random_range(0..=3000),
                food_court: rng.random_bool(0.5),
                avg_household_income: rng.random_range(40_000..=120_000),
                population: rng.random_range(20_000..=500_000),
                facilities,
                probability: round_to(rng.random_range(0.0..=1.0), 2),
            }
        })
        .collect();
    Dataset::from_records(records, format!("synthetic(n={n}, seed={seed})"))
}
