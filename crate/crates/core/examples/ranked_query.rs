//! The end-to-end query: distances, skyline, cross-check against the oracle,
//! and ranking by distance.
//!
//! `cargo run --example ranked_query -- [lat,lng] [facility index...]`

use mall_skyline::engine::{run_query, Algorithm};
use mall_skyline::geo::{build_distance_matrix, Fallback, GreatCircle};
use mall_skyline::ingest::generate_synthetic_dataset;
use mall_skyline::model::{GeoPoint, QuerySpec, FACILITY_CATEGORIES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let origin: GeoPoint = args.next().as_deref().unwrap_or("41.4993,-81.6944").parse()?;
    let facilities: Vec<usize> = args.map(|s| s.parse()).collect::<Result<_, _>>()?;

    let dataset = generate_synthetic_dataset(90, 42)?;
    let spec = QuerySpec::canonical(origin, &facilities, false, 10)?;
    let matrix = build_distance_matrix(origin, &dataset, &GreatCircle, Fallback::GreatCircle)?;
    let result = run_query(&dataset, &spec, &matrix, Algorithm::Sfs)?;

    let names: Vec<&str> = facilities.iter().map(|&i| FACILITY_CATEGORIES[i]).collect();
    println!("origin {origin:?}, facilities {names:?}");
    println!("{:>4}  {:<20} {:<5} {:>9} {:>7}", "rank", "mall", "code", "km", "p");
    for e in &result.entries {
        println!(
            "{:>4}  {:<20} {:<5} {:>9.3} {:>7.2}",
            e.rank, e.record.name, e.code, e.distance_km, e.probability
        );
    }
    println!(
        "algorithm {}  dominance tests {}  divergence {}",
        result.algorithm, result.dominance_tests, result.divergence
    );
    Ok(())
}
