//! Timing sweep over n and d for all four algorithms.
//!
//! `cargo run --release --example bench`

use std::time::Instant;

use mall_skyline::engine::workload::Workload;
use mall_skyline::engine::Algorithm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let algorithms = [Algorithm::Oracle, Algorithm::Bnl { window_capacity: 64 }, Algorithm::Sfs, Algorithm::Dnc];
    print!("{:>7} {:>3} {:>8}", "n", "d", "skyline");
    for a in &algorithms {
        print!(" {:>10}", a.tag());
    }
    println!();

    for n in [1_000, 10_000, 50_000] {
        for d in [2, 4, 6, 8] {
            let (points, spec) = Workload::new(n, d, 42).generate()?;
            let mut size = 0;
            let mut cells = Vec::new();
            for a in &algorithms {
                if matches!(a, Algorithm::Oracle) && n > 10_000 {
                    cells.push("-".to_string());
                    continue;
                }
                let started = Instant::now();
                size = a.run(&points, &spec)?.points.len();
                cells.push(format!("{:.1?}", started.elapsed()));
            }
            print!("{n:>7} {d:>3} {size:>8}");
            for c in cells {
                print!(" {c:>10}");
            }
            println!();
        }
    }
    Ok(())
}
