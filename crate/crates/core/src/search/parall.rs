use std::time::Instant;

use super::astar::{Step, WeightedAStar};
use super::lattice_planners::{lattice_trajectory, EagerLattice};
use super::mesh::{reconstruct_trajectory, MeshSpace};
use super::{trivial_outcome, PlanRequest, PlanResult};

/// Pruning-search steps per lattice step.
pub const DEFAULT_INTERLEAVE: u32 = 100;

enum Winner {
    Pruning(u32),
    Lattice(u32),
}

/// Mesh/PruningA* and LBA* run side by side, `k` pruning steps for every
/// lattice step, sharing nothing. The first search to reach its goal wins;
/// when both would finish in the same round the pruning search is asked
/// first. Metrics are the sums over both searches.
pub fn plan_mesh_parall(req: &PlanRequest, k: u32) -> PlanResult {
    assert!(k > 0, "interleave ratio must be positive");
    let t0 = Instant::now();
    if let Some(done) = trivial_outcome(req) {
        return done;
    }
    let space = MeshSpace::new(req, true);
    let start = space.start();
    let mut pruning = WeightedAStar::new(space, start, (), req.weight);
    let mut lattice = WeightedAStar::new(EagerLattice { req }, req.start, None, req.weight);

    let (mut pruning_live, mut lattice_live) = (true, true);
    let winner = 'run: loop {
        if pruning_live {
            for _ in 0..k {
                match pruning.step() {
                    Step::Continue => {}
                    Step::Found(goal) => break 'run Some(Winner::Pruning(goal)),
                    Step::Exhausted => {
                        pruning_live = false;
                        break;
                    }
                }
            }
        }
        if lattice_live {
            match lattice.step() {
                Step::Continue => {}
                Step::Found(goal) => break 'run Some(Winner::Lattice(goal)),
                Step::Exhausted => lattice_live = false,
            }
        }
        if !pruning_live && !lattice_live {
            break None;
        }
    };

    let mut metrics = pruning.metrics().merged(lattice.metrics());
    metrics.collision_checks += 2;
    metrics.runtime = t0.elapsed();
    match winner {
        Some(Winner::Pruning(goal)) => {
            let t =
                reconstruct_trajectory(goal, |i| pruning.node(i).state, req.control_set, req.start);
            PlanResult::solved_with(t, metrics)
        }
        Some(Winner::Lattice(goal)) => {
            PlanResult::solved_with(lattice_trajectory(&lattice, goal, req, |l| *l), metrics)
        }
        None => PlanResult::unsolved(metrics),
    }
}
