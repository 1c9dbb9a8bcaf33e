//! Plan on a MovingAI map with every algorithm and a few weights.
//!
//! ```bash
//! cargo run --release --example plan_on_map
//! ```

use std::path::PathBuf;

use meshplan::control_set::{ControlSet, Heading};
use meshplan::grid_map::OccupancyGrid;
use meshplan::lattice::DiscreteState;
use meshplan::mesh_graph::MeshTables;
use meshplan::search::{
    dijkstra_oracle, validate_trajectory, Algorithm, PlanRequest, DEFAULT_INTERLEAVE,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let grid = OccupancyGrid::parse_map(&std::fs::read_to_string(data.join("maps/rooms128.map"))?)?;
    let cs = ControlSet::load(&std::fs::read_to_string(
        data.join("control_sets/gen8.json"),
    )?)?;
    let tables = MeshTables::build(&cs);

    let start = DiscreteState::new(10, 10, Heading(0));
    let goal = DiscreteState::new(110, 100, Heading(2));
    let base = PlanRequest::new(&grid, &cs, &tables, start, goal);
    println!("{start} -> {goal}, optimal {:?}", dijkstra_oracle(&base));
    println!(
        "{:<13} {:>4} {:>10} {:>10} {:>10} {:>10}",
        "algo", "w", "cost", "expanded", "checks", "time"
    );
    for w in [1.0, 2.0, 5.0] {
        let req = base.with_weight(w);
        for algo in Algorithm::ALL {
            let r = algo.plan(&req, DEFAULT_INTERLEAVE);
            if let Some(t) = &r.trajectory {
                validate_trajectory(t, &req)?;
            }
            println!(
                "{:<13} {w:>4} {:>10.3} {:>10} {:>10} {:>10.1?}",
                algo.name(),
                r.cost().unwrap_or(f64::NAN),
                r.metrics.expansions,
                r.metrics.collision_checks,
                r.metrics.runtime
            );
        }
    }
    Ok(())
}
