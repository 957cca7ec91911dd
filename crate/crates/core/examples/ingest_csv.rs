//! Load, validate and round-trip a mall CSV; fold a raw facility report into
//! the 15-category vector.
//!
//! `cargo run --example ingest_csv [path/to/malls.csv]`

use mall_skyline::ingest::{facility_totals, load_mall_csv, validate_mall_csv, write_mall_csv, RawFacilityReport};
use mall_skyline::model::FACILITY_CATEGORIES;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/table2.csv").to_string());

    let (ok, errors) = validate_mall_csv(std::fs::File::open(&path)?)?;
    println!("{path}: {ok} valid rows, {} errors", errors.len());
    for e in &errors {
        println!("  {e}");
    }

    let dataset = load_mall_csv(&path)?;
    for r in &dataset.records {
        println!(
            "{:<4} {:<28} stores={:<4} parking={:<5} food_court={} facilities={:?}",
            r.code, r.name, r.store_number, r.parking_space, r.food_court, r.facilities
        );
    }

    let mut out = Vec::new();
    write_mall_csv(&dataset, &mut out)?;
    println!("\nre-serialized {} bytes", out.len());

    let report = RawFacilityReport::new()
        .with("Anchor", &[3])
        .with("Services", &[3])
        .with("Miscellaneous", &[1])
        .with("Hi-Tech", &[2])
        .with("Restaurants", &[2, 4])
        .with("Barbers and Beauty", &[7]);
    let totals = facility_totals(&report)?;
    println!("\nfacility totals:");
    for (name, count) in FACILITY_CATEGORIES.iter().zip(totals) {
        println!("  {name:<22} {count}");
    }
    Ok(())
}
