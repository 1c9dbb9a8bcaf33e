//! Build the mesh tables for a control set once and reuse them from a cache
//! file keyed by the control set's hash.
//!
//! ```bash
//! cargo run --release --example precompute_tables -- crates/core/data/control_sets/gen16x24.json
//! ```

use std::path::PathBuf;
use std::time::Instant;

use meshplan::control_set::ControlSet;
use meshplan::mesh_graph::{control_set_hash, load_or_build};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/control_sets/gen8.json")
        });
    let cs = ControlSet::load(&std::fs::read_to_string(&path)?)?;
    let dir = tempfile::tempdir()?;
    let cache = dir.path().join("tables.json");
    println!(
        "control set {} (sha256 {})",
        path.display(),
        control_set_hash(&cs)
    );

    for round in 1..=2 {
        let t0 = Instant::now();
        let (tables, status) = load_or_build(&cache, &cs)?;
        println!(
            "round {round}: {status:?} in {:?}: {} configurations, {} soft classes, {} successor records",
            t0.elapsed(),
            tables.config_count(),
            tables.soft_class_count(),
            tables.config_ids().map(|id| tables.records(id).len()).sum::<usize>()
        );
    }
    Ok(())
}
