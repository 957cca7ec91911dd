//! Run the HTTP API over a synthetic dataset, or over `PARETO_MALL_DATA`.
//!
//! `cargo run --example serve`, then e.g.
//!
//! ```text
//! curl localhost:8080/api/malls
//! curl -XPOST localhost:8080/api/skyline -H 'content-type: application/json' \
//!      -d '{"origin":{"lat":41.4993,"lng":-81.6944},"selected_facilities":[4]}'
//! ```

use std::sync::Arc;

use mall_skyline::ingest::{generate_synthetic_dataset, load_mall_csv};
use mall_skyline::service::{router, QueryService, DATA_ENV, DEFAULT_PORT, PORT_ENV};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error + Send + Sync>> {
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();

    let dataset = match std::env::var(DATA_ENV) {
        Ok(path) => load_mall_csv(path)?,
        Err(_) => generate_synthetic_dataset(90, 42)?,
    };
    let port: u16 = std::env::var(PORT_ENV).ok().map(|p| p.parse()).transpose()?.unwrap_or(DEFAULT_PORT);

    let service = Arc::new(QueryService::with_dataset(dataset));
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    println!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(service)).await?;
    Ok(())
}
