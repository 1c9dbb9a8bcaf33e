//! Group configurations whose cells reachable within two mesh steps coincide.
//! Pruning search keys on these classes instead of exact configurations.
//!
//! ```bash
//! cargo run --example soft_duplicates
//! ```

use std::collections::BTreeMap;

use meshplan::control_set::generate_arcs;
use meshplan::mesh_graph::MeshTables;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cs = generate_arcs(8, &[1, 2], &[2.0, 3.0], 1.0)?;
    let tables = MeshTables::build(&cs);
    let mut classes: BTreeMap<u32, Vec<_>> = BTreeMap::new();
    for id in tables.config_ids() {
        classes.entry(tables.soft_id(id)).or_default().push(id);
    }
    println!(
        "{} configurations in {} soft classes",
        tables.config_count(),
        tables.soft_class_count()
    );
    for (soft, ids) in classes.iter().filter(|(_, ids)| ids.len() > 1) {
        println!(
            "class {soft}: {:?}",
            tables.reachable_projection_set(ids[0])
        );
        for &id in ids {
            println!("    #{:<3} {}", id.0, tables.configuration(id));
        }
    }
    Ok(())
}
