//! Plan on a maze and draw the result as SVG.
//!
//! ```bash
//! cargo run --release --example render_svg -- maze.svg
//! ```

use std::path::PathBuf;

use meshplan::control_set::{ControlSet, Heading};
use meshplan::grid_map::OccupancyGrid;
use meshplan::lattice::DiscreteState;
use meshplan::mesh_graph::MeshTables;
use meshplan::render::{render_svg, RenderOptions};
use meshplan::search::{plan_mesh, PlanRequest};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "maze.svg".into());
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let grid = OccupancyGrid::parse_map(&std::fs::read_to_string(data.join("maps/maze_c8.map"))?)?;
    let cs = ControlSet::load(&std::fs::read_to_string(
        data.join("control_sets/gen8.json"),
    )?)?;
    let tables = MeshTables::build(&cs);

    let req = PlanRequest::new(
        &grid,
        &cs,
        &tables,
        DiscreteState::new(4, 4, Heading(2)),
        DiscreteState::new(68, 68, Heading(0)),
    );
    let result = plan_mesh(&req);
    let Some(t) = result.trajectory else {
        return Err("no path".into());
    };
    println!(
        "cost {:.3}, {} primitives, {} swept cells",
        t.total_cost,
        t.primitives.len(),
        t.collision_trace.len()
    );
    let svg = render_svg(
        &grid,
        Some(&t),
        &RenderOptions {
            cell_px: 8,
            ..RenderOptions::default()
        },
    );
    std::fs::write(&out, svg)?;
    println!("wrote {out}");
    Ok(())
}
