//! Translate a preference query into SQL: a portable NOT EXISTS anti-join
//! and the SKYLINE OF operator form.
//!
//! `cargo run --example emit_sql`

use mall_skyline::engine::{emit_skyline_operator, emit_skyline_sql};
use mall_skyline::model::{GeoPoint, QuerySpec, FACILITY_CATEGORIES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let origin = GeoPoint::new(41.502744, -81.502225)?;
    let restaurants = FACILITY_CATEGORIES.iter().position(|c| *c == "Restaurants").unwrap();
    let spec = QuerySpec::canonical(origin, &[restaurants], true, 10)?;

    println!("-- anti-join\n{};\n", emit_skyline_sql(&spec, "malls")?);
    println!("-- operator\n{};", emit_skyline_operator(&spec, "malls")?);

    match emit_skyline_sql(&spec, "malls; DROP TABLE x") {
        Ok(_) => unreachable!(),
        Err(e) => println!("\nrejected table name: {e}"),
    }
    Ok(())
}
