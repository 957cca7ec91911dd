//! Pareto dominance and the monotone score on two Table II rows.
//!
//! `cargo run --example dominance`

use mall_skyline::model::{
    dominates, monotone_score, Dimension, Direction, GeoPoint, QueryPoint, QuerySpec, ScoreBounds,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let origin = GeoPoint::new(41.502744, -81.502225)?;
    let spec = QuerySpec::new(
        origin,
        vec![
            (Dimension::StoreNumber, Direction::Max),
            (Dimension::ParkingSpace, Direction::Max),
            (Dimension::FoodCourt, Direction::Max),
            (Dimension::AvgHouseholdIncome, Direction::Min),
            (Dimension::Population, Direction::Min),
        ],
        10,
    )?;

    // stores, parking, food court, income, population
    let s4 = QueryPoint::new("OH4", vec![23.0, 2569.0, 1.0, 92662.0, 60837.0]);
    let s3 = QueryPoint::new("OH3", vec![17.0, 1513.0, 0.0, 92710.0, 474913.0]);

    println!("OH4 dominates OH3: {}", dominates(&s4, &s3, &spec)?);
    println!("OH3 dominates OH4: {}", dominates(&s3, &s4, &spec)?);
    println!("OH4 dominates itself: {}", dominates(&s4, &s4, &spec)?);

    let points = [s4, s3];
    let bounds = ScoreBounds::from_points(&points, &spec)?;
    for p in &points {
        println!("score({}) = {:.4}", p.code, monotone_score(p, &spec, &bounds)?);
    }
    Ok(())
}
