//! The four skyline algorithms side by side on a random workload.
//!
//! `cargo run --release --example skyline_algorithms -- [n] [d] [seed]`

use std::time::Instant;

use mall_skyline::engine::workload::Workload;
use mall_skyline::engine::Algorithm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10_000);
    let d = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);

    let (points, spec) = Workload::new(n, d, seed).generate()?;
    println!("n={n} d={d} seed={seed}");
    println!("{:<10} {:>8} {:>14} {:>12}", "algorithm", "size", "dominance", "time");

    let mut reference = None;
    for alg in [
        Algorithm::Oracle,
        Algorithm::Bnl { window_capacity: 64 },
        Algorithm::Sfs,
        Algorithm::Dnc,
    ] {
        let started = Instant::now();
        let run = alg.run(&points, &spec)?;
        let took = started.elapsed();
        let mut codes: Vec<String> = run.codes().into_iter().map(str::to_owned).collect();
        codes.sort();
        println!("{:<10} {:>8} {:>14} {:>12.2?}", alg.tag(), codes.len(), run.dominance_tests, took);
        match &reference {
            None => reference = Some(codes),
            Some(r) => assert_eq!(r, &codes, "{} disagrees with the oracle", alg.tag()),
        }
    }
    println!("all algorithms agree");
    Ok(())
}
