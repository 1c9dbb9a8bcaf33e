//! Eager and lazy lattice search against the mesh graph on random grids:
//! same costs, different collision-check budgets.
//!
//! ```bash
//! cargo run --release --example lazy_vs_eager
//! ```

use meshplan::bench::median;
use meshplan::bench::synth::random_grid;
use meshplan::control_set::{generate_arcs, Heading};
use meshplan::lattice::DiscreteState;
use meshplan::mesh_graph::MeshTables;
use meshplan::search::{plan_lazy_lba, plan_lba, plan_mesh, PlanRequest};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cs = generate_arcs(8, &[1, 2], &[2.0, 3.0], 1.0)?;
    let tables = MeshTables::build(&cs);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checks = [vec![], vec![], vec![]];
    let mut solved = 0;
    for _ in 0..100 {
        let grid = random_grid(40, 40, 0.15, &mut rng);
        let free: Vec<_> = grid.free_cells().collect();
        let mut pick = || {
            DiscreteState::at(
                free[rng.gen_range(0..free.len())],
                Heading(rng.gen_range(0..8)),
            )
        };
        let (start, goal) = (pick(), pick());
        let req = PlanRequest::new(&grid, &cs, &tables, start, goal);
        let runs = [plan_lba(&req), plan_lazy_lba(&req), plan_mesh(&req)];
        if !runs.iter().all(|r| r.solved()) {
            continue;
        }
        solved += 1;
        assert!(runs
            .iter()
            .all(|r| (r.cost().unwrap() - runs[0].cost().unwrap()).abs() < 1e-9));
        for (c, r) in checks.iter_mut().zip(&runs) {
            c.push(r.metrics.collision_checks as f64);
        }
    }
    println!("{solved} solved queries, median collision checks:");
    for (name, c) in ["eager lattice", "lazy lattice", "mesh"]
        .iter()
        .zip(&checks)
    {
        println!("  {name:<14} {:.0}", median(c).unwrap_or(f64::NAN));
    }
    Ok(())
}
