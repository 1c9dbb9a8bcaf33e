//! Run a benchmark sweep from a JSON config and print the paired summary.
//!
//! ```bash
//! cargo run --release --example benchmark_sweep -- crates/core/data/bench_small.json out.csv
//! ```

use std::path::PathBuf;

use meshplan::bench::{load_bench, write_csv, BenchConfig, Summary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let config = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/bench_small.json"));
    let mut cfg = BenchConfig::load(&config)?;
    cfg.output = args.next().map(PathBuf::from);

    let bench = load_bench(cfg)?;
    for (name, _, instances) in &bench.maps {
        println!("{name}: {} instances", instances.len());
    }
    let records = bench.run();
    if let Some(out) = &bench.config.output {
        write_csv(out, &records)?;
        println!("wrote {} rows to {}", records.len(), out.display());
    }
    print!("{}", Summary::from_records(&records));
    Ok(())
}
