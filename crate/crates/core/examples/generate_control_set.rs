//! Generate car-like control sets and write them as JSON.
//!
//! ```bash
//! cargo run --example generate_control_set -- crates/core/data/control_sets
//! ```
//!
//! Writes `toy2.json`, `gen8.json` (8 headings, straights of 1 and 2 moves,
//! radii 2 and 3) and `gen16x24.json` (16 headings, 24 primitives each).

use std::path::PathBuf;

use meshplan::control_set::{generate_arcs, toy2, ArcGenerator, ControlSet};

fn describe(name: &str, cs: &ControlSet) {
    let per_heading: Vec<usize> = cs.headings().map(|h| cs.starting_at(h).count()).collect();
    let longest = cs
        .primitives
        .iter()
        .map(|p| p.trace.len())
        .max()
        .unwrap_or(0);
    println!(
        "{name}: {} headings, {} primitives ({:?} per heading), longest trace {longest} cells",
        cs.heading_count,
        cs.primitives.len(),
        per_heading
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "control_sets".into()),
    );
    std::fs::create_dir_all(&out)?;

    let sets = [
        ("toy2", toy2()),
        ("gen8", generate_arcs(8, &[1, 2], &[2.0, 3.0], 1.0)?),
        (
            "gen16x24",
            ArcGenerator {
                heading_count: 16,
                straight_lengths: vec![1, 2, 3, 4],
                arc_radii: vec![2.0, 3.0, 4.0, 5.0, 6.0],
                turn_steps: vec![1, 2],
                cell_size: 1.0,
                snap_window: 4,
            }
            .generate()?,
        ),
    ];
    for (name, cs) in &sets {
        let violations = cs.validate();
        if !violations.is_empty() {
            for v in &violations {
                eprintln!("{name}: {v}");
            }
            return Err(format!("{name} does not validate").into());
        }
        describe(name, cs);
        std::fs::write(out.join(format!("{name}.json")), cs.save())?;
    }
    Ok(())
}
