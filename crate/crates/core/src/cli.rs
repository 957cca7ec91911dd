//! The `mall-skyline` command line.
//!
//! ```text
//! mall-skyline validate --data malls.csv
//! mall-skyline query    --data malls.csv --origin 41.502744,-81.502225 [--facilities 0,4] [--food-court]
//!                       [--algorithm sfs] [--limit 10]
//! mall-skyline emit-sql --dims distance:min,store_number:max [--table malls] [--operator]
//! mall-skyline bench    --n 1000 --d 5 --seed 7 [--trials 1] [--window 64] [--csv out.csv]
//! mall-skyline gen      --n 90 --seed 42 [--out malls.csv]
//! mall-skyline serve    [--data malls.csv] [--port 8080]
//! ```
//!
//! Exit status: 0 on success, 1 on data or runtime errors, 2 on usage errors.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::engine::workload::Workload;
use crate::engine::{
    emit_skyline_operator, emit_skyline_sql, emit_skyline_sql_for, run_query, Algorithm, DEFAULT_WINDOW_CAPACITY,
};
use crate::geo::{build_distance_matrix, Fallback, GreatCircle};
use crate::ingest::{generate_synthetic_dataset, load_mall_csv, validate_mall_csv, write_mall_csv};
use crate::model::{Dimension, Direction, GeoPoint, QuerySpec, DEFAULT_LIMIT};
use crate::service::{self, ServeConfig};

#[derive(Debug, Parser)]
#[command(name = "mall-skyline", version, about = "Skyline queries over shopping-mall records")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a mall CSV and report every invalid row.
    Validate {
        #[arg(long)]
        data: PathBuf,
    },
    /// Run a preference query and print the ranked skyline.
    Query {
        #[arg(long)]
        data: PathBuf,
        /// Origin as `lat,lng`.
        #[arg(long, allow_hyphen_values = true)]
        origin: GeoPoint,
        /// Facility category indices (0-14), comma separated.
        #[arg(long, value_delimiter = ',')]
        facilities: Vec<usize>,
        #[arg(long)]
        food_court: bool,
        #[arg(long, default_value = "sfs")]
        algorithm: Algorithm,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Print the NOT EXISTS skyline query for a dimension list.
    EmitSql {
        /// `dimension:min|max` pairs, comma separated. Defaults to the
        /// canonical preference dimensions.
        #[arg(long, value_delimiter = ',')]
        dims: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        facilities: Vec<usize>,
        #[arg(long)]
        food_court: bool,
        #[arg(long, default_value = "malls")]
        table: String,
        /// Print the `SKYLINE OF` operator form instead.
        #[arg(long)]
        operator: bool,
    },
    /// Time every algorithm on generated point sets and check they agree.
    Bench {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        d: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_WINDOW_CAPACITY)]
        window: usize,
        /// Also write per-run measurements as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write a synthetic mall CSV.
    Gen {
        #[arg(long, default_value_t = 90)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Start the HTTP service.
    Serve {
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        port: Option<u16>,
    },
}

type CliResult = Result<i32, Box<dyn std::error::Error + Send + Sync>>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Validate { data } => validate(&data, out, err),
        Command::Query {
            data,
            origin,
            facilities,
            food_court,
            algorithm,
            limit,
        } => {
            let dataset = load_mall_csv(&data)?;
            let spec = QuerySpec::canonical(origin, &facilities, food_court, limit)?;
            let matrix = build_distance_matrix(origin, &dataset, &GreatCircle, Fallback::GreatCircle)?;
            let result = run_query(&dataset, &spec, &matrix, algorithm)?;
            write_result_table(out, &result)?;
            Ok(0)
        }
        Command::EmitSql {
            dims,
            facilities,
            food_court,
            table,
            operator,
        } => {
            let origin = GeoPoint { lat: 0.0, lng: 0.0 };
            let spec = if dims.is_empty() {
                QuerySpec::canonical(origin, &facilities, food_court, DEFAULT_LIMIT)?
            } else {
                QuerySpec::new(origin, parse_dims(&dims)?, DEFAULT_LIMIT)?
            };
            let sql = if operator {
                emit_skyline_operator(&spec, &table)?
            } else if dims.is_empty() {
                emit_skyline_sql(&spec, &table)?
            } else {
                emit_skyline_sql_for(spec.dimensions(), &table)?
            };
            writeln!(out, "{sql}")?;
            Ok(0)
        }
        Command::Bench {
            n,
            d,
            seed,
            trials,
            window,
            csv,
        } => bench(n, d, seed, trials, window, csv, out),
        Command::Gen { n, seed, out: path } => {
            let dataset = generate_synthetic_dataset(n, seed)?;
            match path {
                Some(p) => write_mall_csv(&dataset, File::create(p)?)?,
                None => write_mall_csv(&dataset, &mut *out)?,
            }
            Ok(0)
        }
        Command::Serve { data, port } => {
            let mut config = ServeConfig::from_env()?;
            if data.is_some() {
                config.data_path = data;
            }
            if let Some(p) = port {
                config.port = p;
            }
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(service::serve(config))?;
            Ok(0)
        }
    }
}

/// Parses `name:min|max` pairs.
pub fn parse_dims(items: &[String]) -> Result<Vec<(Dimension, Direction)>, crate::model::ModelError> {
    items
        .iter()
        .map(|item| {
            let (name, dir) = item.split_once(':').ok_or_else(|| {
                crate::model::ModelError::InvalidValue(format!("expected `dimension:min|max`, got `{item}`"))
            })?;
            Ok((name.parse()?, dir.parse()?))
        })
        .collect()
}

fn validate(path: &PathBuf, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let (ok, errors) = validate_mall_csv(File::open(path)?)?;
    for e in &errors {
        writeln!(err, "{e}")?;
    }
    writeln!(out, "{}: {ok} valid rows, {} errors", path.display(), errors.len())?;
    Ok(if errors.is_empty() { 0 } else { 1 })
}

fn write_result_table(out: &mut dyn Write, result: &crate::engine::SkylineResult) -> io::Result<()> {
    let header = [
        "Rank",
        "Mall",
        "Code",
        "Distance (km)",
        "Store number",
        "Parking space",
        "Food court",
        "Average household income",
        "Population",
        "Facilities",
        "Probability",
    ];
    let rows: Vec<[String; 11]> = result
        .entries
        .iter()
        .map(|e| {
            let r = &e.record;
            let facilities = r.facilities.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            [
                e.rank.to_string(),
                r.name.clone(),
                e.code.clone(),
                format!("{:.3}", e.distance_km),
                r.store_number.to_string(),
                r.parking_space.to_string(),
                u8::from(r.food_court).to_string(),
                r.avg_household_income.to_string(),
                r.population.to_string(),
                format!("[{facilities}]"),
                format!("{:.2}", e.probability),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in &rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    writeln!(
        out,
        "algorithm: {}  results: {}  divergence: {}",
        result.algorithm,
        result.entries.len(),
        result.divergence
    )
}

fn bench(
    n: usize,
    d: usize,
    seed: u64,
    trials: u64,
    window: usize,
    csv_path: Option<PathBuf>,
    out: &mut dyn Write,
) -> CliResult {
    let algorithms = [
        Algorithm::Oracle,
        Algorithm::Bnl { window_capacity: window },
        Algorithm::Sfs,
        Algorithm::Dnc,
    ];
    let mut csv = csv_path.map(csv::Writer::from_path).transpose()?;
    if let Some(w) = csv.as_mut() {
        w.write_record(["trial", "seed", "n", "d", "algorithm", "window", "time_ms", "dominance_tests", "skyline_size", "agrees"])?;
    }
    writeln!(
        out,
        "{:<6} {:>6} {:>6} {:>3} {:<7} {:>7} {:>10} {:>16} {:>8} {:>6}",
        "trial", "seed", "n", "d", "algo", "window", "time_ms", "dominance_tests", "skyline", "agrees"
    )?;

    let mut all_agree = true;
    for trial in 0..trials {
        let trial_seed = seed.wrapping_add(trial);
        let (points, spec) = Workload::new(n, d, trial_seed).generate()?;
        let mut reference: Option<BTreeSet<String>> = None;
        for algorithm in algorithms {
            let started = Instant::now();
            let run = algorithm.run(&points, &spec)?;
            let ms = started.elapsed().as_secs_f64() * 1000.0;
            let members: BTreeSet<String> = run.points.iter().map(|p| p.code.clone()).collect();
            let agrees = match &reference {
                None => {
                    reference = Some(members.clone());
                    true
                }
                Some(r) => *r == members,
            };
            all_agree &= agrees;
            let window_col = match algorithm {
                Algorithm::Bnl { window_capacity } => window_capacity.to_string(),
                _ => "-".to_string(),
            };
            writeln!(
                out,
                "{:<6} {:>6} {:>6} {:>3} {:<7} {:>7} {:>10.3} {:>16} {:>8} {:>6}",
                trial,
                trial_seed,
                n,
                d,
                algorithm.tag(),
                window_col,
                ms,
                run.dominance_tests,
                members.len(),
                agrees
            )?;
            if let Some(w) = csv.as_mut() {
                w.write_record([
                    trial.to_string(),
                    trial_seed.to_string(),
                    n.to_string(),
                    d.to_string(),
                    algorithm.tag().to_string(),
                    window_col,
                    format!("{ms:.3}"),
                    run.dominance_tests.to_string(),
                    members.len().to_string(),
                    agrees.to_string(),
                ])?;
            }
        }
    }
    if let Some(mut w) = csv {
        w.flush()?;
    }
    writeln!(out, "all algorithms agree: {all_agree}")?;
    Ok(if all_agree { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("mall-skyline").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["query", "--bogus"]).0, 2);
        assert_eq!(run_capture(&["query", "--data", "x.csv", "--origin", "1,2", "--algorithm", "bbs"]).0, 2);
    }

    #[test]
    fn missing_file_exits_1() {
        let (code, _, err) = run_capture(&["validate", "--data", "/nonexistent/malls.csv"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn emit_sql_dims() {
        let (code, out, _) = run_capture(&["emit-sql", "--dims", "distance:min,store_number:max"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "SELECT * FROM malls S WHERE NOT EXISTS (SELECT * FROM malls S1 WHERE S1.distance <= S.distance AND S1.store_number >= S.store_number AND (S1.distance < S.distance OR S1.store_number > S.store_number))\n"
        );
        assert_eq!(run_capture(&["emit-sql", "--dims", "price:min"]).0, 1);
        assert_eq!(run_capture(&["emit-sql", "--table", "bad name"]).0, 1);
    }

    #[test]
    fn parse_dims_pairs() {
        let dims = parse_dims(&["distance:MIN".into(), "anchor:max".into()]).unwrap();
        assert_eq!(
            dims,
            [(Dimension::Distance, Direction::Min), (Dimension::Facility(0), Direction::Max)]
        );
        assert!(parse_dims(&["distance".into()]).is_err());
    }
}
