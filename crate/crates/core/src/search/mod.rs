//! Planners over the state lattice and the mesh graph.
//!
//! | planner | graph | collision checking |
//! |---|---|---|
//! | [`plan_lba`] | lattice | eager, whole trace per generated primitive |
//! | [`plan_lazy_lba`] | lattice | lazy, trace of the popped primitive |
//! | [`plan_mesh`] | mesh graph | one cell per generated successor |
//! | [`plan_mesh_pruning`] | mesh graph, soft-duplicate keys | as mesh |
//! | [`plan_mesh_parall`] | pruning mesh search interleaved with LBA | both |
//!
//! [`dijkstra_oracle`] is an independent uniform-cost search used as ground
//! truth in tests.

pub mod astar;
mod lattice_planners;
mod mesh;
mod oracle;
mod parall;
mod trajectory;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::control_set::ControlSet;
use crate::grid_map::{GridCell, OccupancyGrid};
use crate::lattice::DiscreteState;
use crate::mesh_graph::MeshTables;

pub use astar::{weighted_astar, GraphPath, SearchSpace, WeightedAStar};
pub use lattice_planners::{plan_lazy_lba, plan_lba};
pub use mesh::{
    mesh_h, plan_mesh, plan_mesh_pruning, reconstruct_alg3, reconstruct_trajectory, MeshNode,
    MeshSearchOutput,
};
pub use oracle::dijkstra_oracle;
pub use parall::{plan_mesh_parall, DEFAULT_INTERLEAVE};
pub use trajectory::{validate_trajectory, Trajectory, TrajectoryViolation};

/// Straight-line distance between cell centers, in cells.
#[inline]
pub fn euclidean_h(cell: GridCell, goal: GridCell) -> f64 {
    let (di, dj) = ((cell.i - goal.i) as f64, (cell.j - goal.j) as f64);
    di.hypot(dj)
}

#[derive(Debug, Clone, Copy)]
pub struct PlanRequest<'a> {
    pub grid: &'a OccupancyGrid,
    pub control_set: &'a ControlSet,
    pub tables: &'a MeshTables,
    pub start: DiscreteState,
    pub goal: DiscreteState,
    /// Heuristic inflation, `>= 1`.
    pub weight: f64,
    /// Cost units per cell for the Euclidean heuristic.
    pub heuristic_scale: f64,
}

impl<'a> PlanRequest<'a> {
    pub fn new(
        grid: &'a OccupancyGrid,
        control_set: &'a ControlSet,
        tables: &'a MeshTables,
        start: DiscreteState,
        goal: DiscreteState,
    ) -> Self {
        Self {
            grid,
            control_set,
            tables,
            start,
            goal,
            weight: 1.0,
            heuristic_scale: 1.0,
        }
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        assert!(weight >= 1.0, "heuristic weight must be >= 1, got {weight}");
        self.weight = weight;
        self
    }

    pub fn with_heuristic_scale(mut self, scale: f64) -> Self {
        self.heuristic_scale = scale;
        self
    }

    #[inline]
    pub(crate) fn h(&self, cell: GridCell) -> f64 {
        self.heuristic_scale * euclidean_h(cell, self.goal.cell())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchMetrics {
    pub expansions: u64,
    pub generated: u64,
    /// `is_blocked` calls.
    pub collision_checks: u64,
    pub runtime: Duration,
    pub solved: bool,
    pub cost: Option<f64>,
}

impl SearchMetrics {
    /// Counters of two searches added together (runtime included).
    pub fn merged(&self, other: &SearchMetrics) -> SearchMetrics {
        SearchMetrics {
            expansions: self.expansions + other.expansions,
            generated: self.generated + other.generated,
            collision_checks: self.collision_checks + other.collision_checks,
            runtime: self.runtime + other.runtime,
            solved: self.solved || other.solved,
            cost: self.cost.or(other.cost),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlanResult {
    pub trajectory: Option<Trajectory>,
    pub metrics: SearchMetrics,
}

impl PlanResult {
    pub fn cost(&self) -> Option<f64> {
        self.metrics.cost
    }

    pub fn solved(&self) -> bool {
        self.metrics.solved
    }

    pub(crate) fn unsolved(metrics: SearchMetrics) -> Self {
        Self {
            trajectory: None,
            metrics: SearchMetrics {
                solved: false,
                cost: None,
                ..metrics
            },
        }
    }

    pub(crate) fn solved_with(trajectory: Trajectory, metrics: SearchMetrics) -> Self {
        let cost = trajectory.total_cost;
        Self {
            trajectory: Some(trajectory),
            metrics: SearchMetrics {
                solved: true,
                cost: Some(cost),
                ..metrics
            },
        }
    }
}

/// Shared preamble: one check each for the start and goal cells, and the
/// empty plan when start equals goal.
pub(crate) fn trivial_outcome(req: &PlanRequest) -> Option<PlanResult> {
    let mut metrics = SearchMetrics {
        collision_checks: 2,
        ..Default::default()
    };
    let blocked = req.grid.is_blocked(req.start.cell()) | req.grid.is_blocked(req.goal.cell());
    if blocked {
        return Some(PlanResult::unsolved(metrics));
    }
    if req.start == req.goal {
        metrics.solved = true;
        return Some(PlanResult::solved_with(
            Trajectory::empty(req.start),
            metrics,
        ));
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Lba,
    LazyLba,
    Mesh,
    MeshPruning,
    MeshParall,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Lba,
        Algorithm::LazyLba,
        Algorithm::Mesh,
        Algorithm::MeshPruning,
        Algorithm::MeshParall,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Lba => "lba",
            Algorithm::LazyLba => "lazy_lba",
            Algorithm::Mesh => "mesh",
            Algorithm::MeshPruning => "mesh_pruning",
            Algorithm::MeshParall => "mesh_parall",
        }
    }

    /// Run this planner; `interleave` is only used by Mesh/ParallA*.
    pub fn plan(self, req: &PlanRequest, interleave: u32) -> PlanResult {
        match self {
            Algorithm::Lba => plan_lba(req),
            Algorithm::LazyLba => plan_lazy_lba(req),
            Algorithm::Mesh => plan_mesh(req),
            Algorithm::MeshPruning => plan_mesh_pruning(req),
            Algorithm::MeshParall => plan_mesh_parall(req, interleave),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}; expected one of lba, lazy_lba, mesh, mesh_pruning, mesh_parall"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean() {
        assert_eq!(euclidean_h(GridCell::new(0, 0), GridCell::new(3, 4)), 5.0);
        assert_eq!(euclidean_h(GridCell::new(2, 2), GridCell::new(2, 2)), 0.0);
        let (a, b) = (GridCell::new(-1, 7), GridCell::new(4, -2));
        assert_eq!(euclidean_h(a, b), euclidean_h(b, a));
    }

    #[test]
    fn algorithm_names_roundtrip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>(), Ok(a));
        }
        assert!("astar".parse::<Algorithm>().is_err());
    }
}
