#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use mall_skyline::ingest::{load_mall_csv, Dataset};
use mall_skyline::model::{Dimension, Direction, GeoPoint, QueryPoint, QuerySpec};

pub const S1_LOCATION: GeoPoint = GeoPoint {
    lat: 41.502744,
    lng: -81.502225,
};

pub fn table2_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/table2.csv")
}

pub fn table2() -> Dataset {
    load_mall_csv(table2_path()).expect("table2 fixture")
}

/// stores MAX, parking MAX, food_court MAX, income MIN, population MIN
pub fn table2_spec() -> QuerySpec {
    QuerySpec::new(
        S1_LOCATION,
        vec![
            (Dimension::StoreNumber, Direction::Max),
            (Dimension::ParkingSpace, Direction::Max),
            (Dimension::FoodCourt, Direction::Max),
            (Dimension::AvgHouseholdIncome, Direction::Min),
            (Dimension::Population, Direction::Min),
        ],
        10,
    )
    .unwrap()
}

pub fn table2_points() -> Vec<QueryPoint> {
    let spec = table2_spec();
    table2()
        .records
        .iter()
        .map(|r| QueryPoint::project(r.clone(), &spec, None).unwrap())
        .collect()
}

pub fn codes(points: &[QueryPoint]) -> BTreeSet<String> {
    points.iter().map(|p| p.code.clone()).collect()
}

/// Brute-force skyline written directly against raw values and directions,
/// without the library's orientation or dominance helpers.
pub fn naive_skyline(points: &[QueryPoint], dirs: &[Direction]) -> BTreeSet<String> {
    let better_or_equal = |a: f64, b: f64, d: Direction| match d {
        Direction::Min => a <= b,
        Direction::Max => a >= b,
    };
    let strictly_better = |a: f64, b: f64, d: Direction| match d {
        Direction::Min => a < b,
        Direction::Max => a > b,
    };
    let beats = |a: &QueryPoint, b: &QueryPoint| {
        let all = (0..dirs.len()).all(|k| better_or_equal(a.values[k], b.values[k], dirs[k]));
        let some = (0..dirs.len()).any(|k| strictly_better(a.values[k], b.values[k], dirs[k]));
        all && some
    };
    points
        .iter()
        .filter(|p| !points.iter().any(|q| beats(q, p)))
        .map(|p| p.code.clone())
        .collect()
}

pub fn set(codes: &[&str]) -> BTreeSet<String> {
    codes.iter().map(|c| c.to_string()).collect()
}
