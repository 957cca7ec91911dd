//! Multi-dimensional skyline queries over geo-located shopping malls.
//!
//! A user picks a location and a set of preferences; the engine returns the
//! malls that no other mall beats on every criterion at once (distance,
//! store count, parking, household income, population and any selected
//! facility categories), ranked by distance.
//!
//! ```
//! use mall_skyline::engine::{run_query, Algorithm};
//! use mall_skyline::geo::{build_distance_matrix, Fallback, GreatCircle};
//! use mall_skyline::ingest::generate_synthetic_dataset;
//! use mall_skyline::model::{GeoPoint, QuerySpec};
//!
//! let dataset = generate_synthetic_dataset(90, 42).unwrap();
//! let origin = GeoPoint::new(41.4993, -81.6944).unwrap();
//! let spec = QuerySpec::canonical(origin, &[4], false, 10).unwrap();
//! let matrix = build_distance_matrix(origin, &dataset, &GreatCircle, Fallback::GreatCircle).unwrap();
//! let result = run_query(&dataset, &spec, &matrix, Algorithm::Sfs).unwrap();
//! assert!(!result.divergence);
//! assert!(result.entries.len() <= 10);
//! ```
//!
//! Module map:
//!
//! - [`model`]: records, query specs, orientation and dominance
//! - [`ingest`]: CSV parsing and the synthetic dataset generator
//! - [`geo`]: great-circle distances and pluggable routing providers
//! - [`engine`]: oracle, BNL, SFS and divide-and-conquer skylines, SQL
//!   emission, matching and ranking
//! - [`service`]: the HTTP/JSON API
//! - [`cli`]: the `mall-skyline` command line

pub mod cli;
pub mod engine;
pub mod geo;
pub mod ingest;
pub mod model;
pub mod service;
