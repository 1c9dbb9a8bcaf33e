//! The two-heading toy control set end to end: configurations, their mesh
//! successors, and one query planned by every algorithm.
//!
//! ```bash
//! cargo run --example toy2_walkthrough
//! ```

use meshplan::control_set::{toy2, Heading};
use meshplan::grid_map::{GridCell, OccupancyGrid};
use meshplan::lattice::DiscreteState;
use meshplan::mesh_graph::{MeshTables, SuccessorKind};
use meshplan::search::{dijkstra_oracle, Algorithm, PlanRequest, DEFAULT_INTERLEAVE};

fn main() {
    let cs = toy2();
    for p in &cs.primitives {
        println!(
            "P{} {} -> {} end {:?} cost {} trace {:?}",
            p.id, p.start_heading, p.end_heading, p.end_offset, p.cost, p.trace
        );
    }

    let tables = MeshTables::build(&cs);
    println!("\n{} configurations", tables.config_count());
    for id in tables.config_ids() {
        println!(
            "  #{} {}  soft class {}",
            id.0,
            tables.configuration(id),
            tables.soft_id(id)
        );
        for r in tables.records(id) {
            let kind = match r.kind {
                SuccessorKind::Initial => format!("initial via P{}", r.via.unwrap()),
                SuccessorKind::NonInitial => "non-initial".into(),
            };
            println!(
                "      +{:?} -> #{}  cost {}  {kind}",
                r.delta, r.next.0, r.cost
            );
        }
    }

    let grid = OccupancyGrid::empty(8, 8).with_blocked(&[GridCell::new(3, 1)]);
    let start = DiscreteState::new(0, 0, Heading(0));
    let goal = DiscreteState::new(4, 2, Heading(0));
    let req = PlanRequest::new(&grid, &cs, &tables, start, goal);
    println!(
        "\n{start} -> {goal}, optimal cost {:?}",
        dijkstra_oracle(&req)
    );
    for algo in Algorithm::ALL {
        let r = algo.plan(&req, DEFAULT_INTERLEAVE);
        let ids = r.trajectory.as_ref().map(|t| t.template_ids());
        println!(
            "  {:<13} cost {:?} primitives {ids:?} expansions {} checks {}",
            algo.name(),
            r.cost(),
            r.metrics.expansions,
            r.metrics.collision_checks
        );
    }
}
