//! Distances from a user location to every mall.
//!
//! Uses great-circle distances by default. Set `PARETO_MALL_ROUTING_URL`
//! (and optionally `PARETO_MALL_ROUTING_KEY`) to query a routing service
//! instead; destinations it cannot answer fall back to great-circle.
//!
//! `cargo run --example distance_matrix -- 41.4993,-81.6944`

use mall_skyline::geo::{build_distance_matrix, haversine_km, DistanceProvider, Fallback, GreatCircle, HttpRoutingProvider};
use mall_skyline::ingest::generate_synthetic_dataset;
use mall_skyline::model::GeoPoint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let origin: GeoPoint = std::env::args().nth(1).as_deref().unwrap_or("41.4993,-81.6944").parse()?;

    let london = GeoPoint::new(51.5074, -0.1278)?;
    let paris = GeoPoint::new(48.8566, 2.3522)?;
    println!("London -> Paris: {:.1} km", haversine_km(london, paris));

    let provider: Box<dyn DistanceProvider> = match HttpRoutingProvider::from_env() {
        Some(p) => Box::new(p?),
        None => Box::new(GreatCircle),
    };

    let dataset = generate_synthetic_dataset(20, 42)?;
    let matrix = build_distance_matrix(origin, &dataset, provider.as_ref(), Fallback::GreatCircle)?;
    println!("provider: {}", matrix.provider);
    let mut rows: Vec<_> = matrix.entries.iter().collect();
    rows.sort_by(|a, b| a.1.total_cmp(b.1));
    for (code, km) in rows {
        println!("{code:<5} {km:>8.3} km");
    }
    Ok(())
}
