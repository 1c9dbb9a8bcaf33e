use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::PlanRequest;
use crate::control_set::{instantiate, ControlSet, PrimitiveId, PrimitiveInstance};
use crate::grid_map::{GridCell, OccupancyGrid};
use crate::lattice::DiscreteState;

/// A chain of primitive instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub start: DiscreteState,
    pub primitives: Vec<PrimitiveInstance>,
    pub total_cost: f64,
    /// The start cell and every cell of the member traces.
    pub collision_trace: BTreeSet<GridCell>,
}

impl Trajectory {
    pub fn empty(start: DiscreteState) -> Self {
        Self {
            start,
            primitives: Vec::new(),
            total_cost: 0.0,
            collision_trace: BTreeSet::from([start.cell()]),
        }
    }

    /// Chain the given templates from `start`. Fails on a heading mismatch.
    pub fn from_templates(
        cs: &ControlSet,
        start: DiscreteState,
        ids: impl IntoIterator<Item = PrimitiveId>,
    ) -> Result<Self, crate::control_set::HeadingMismatch> {
        let mut t = Self::empty(start);
        let mut at = start;
        for id in ids {
            let prim = cs.primitive(id);
            let inst = instantiate(prim, at)?;
            at = inst.end_state;
            t.total_cost += prim.cost;
            t.collision_trace
                .extend(inst.absolute_trace.iter().copied());
            t.primitives.push(inst);
        }
        Ok(t)
    }

    pub fn end(&self) -> DiscreteState {
        self.primitives.last().map_or(self.start, |p| p.end_state)
    }

    pub fn template_ids(&self) -> Vec<PrimitiveId> {
        self.primitives.iter().map(|p| p.template_id).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrajectoryViolation {
    #[error("trajectory starts at {found}, expected {expected}")]
    Start {
        expected: DiscreteState,
        found: DiscreteState,
    },
    #[error("trajectory ends at {found}, expected {expected}")]
    Goal {
        expected: DiscreteState,
        found: DiscreteState,
    },
    #[error("primitive {index} starts at {found}, previous one ends at {expected}")]
    Gap {
        index: usize,
        expected: DiscreteState,
        found: DiscreteState,
    },
    #[error("primitive {index} does not match template {template}")]
    Template { index: usize, template: PrimitiveId },
    #[error("total cost {found} differs from the sum of primitive costs {expected}")]
    Cost { expected: f64, found: f64 },
    #[error("collision trace differs from the start cell plus the primitive traces")]
    TraceUnion,
    #[error("cell {0} of the collision trace is blocked")]
    Collision(GridCell),
}

/// Check chaining, endpoints, cost bookkeeping and that the swept cells are
/// free. Returns the first violation found.
pub fn validate_trajectory(t: &Trajectory, req: &PlanRequest) -> Result<(), TrajectoryViolation> {
    validate_against(t, req.control_set, req.grid, req.start, req.goal)
}

pub(crate) fn validate_against(
    t: &Trajectory,
    cs: &ControlSet,
    grid: &OccupancyGrid,
    start: DiscreteState,
    goal: DiscreteState,
) -> Result<(), TrajectoryViolation> {
    if t.start != start {
        return Err(TrajectoryViolation::Start {
            expected: start,
            found: t.start,
        });
    }
    let mut at = start;
    let mut cost = 0.0;
    let mut union = BTreeSet::from([start.cell()]);
    for (index, inst) in t.primitives.iter().enumerate() {
        if inst.start_state != at {
            return Err(TrajectoryViolation::Gap {
                index,
                expected: at,
                found: inst.start_state,
            });
        }
        let template = inst.template_id;
        let matches = cs
            .primitives
            .get(template as usize)
            .and_then(|p| instantiate(p, at).ok())
            .is_some_and(|expected| &expected == inst);
        if !matches {
            return Err(TrajectoryViolation::Template { index, template });
        }
        cost += cs.primitive(template).cost;
        union.extend(inst.absolute_trace.iter().copied());
        at = inst.end_state;
    }
    if at != goal {
        return Err(TrajectoryViolation::Goal {
            expected: goal,
            found: at,
        });
    }
    if (cost - t.total_cost).abs() > 1e-9 * cost.abs().max(1.0) {
        return Err(TrajectoryViolation::Cost {
            expected: cost,
            found: t.total_cost,
        });
    }
    if union != t.collision_trace {
        return Err(TrajectoryViolation::TraceUnion);
    }
    if let Some(&c) = union.iter().find(|&&c| grid.is_blocked(c)) {
        return Err(TrajectoryViolation::Collision(c));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control_set::{toy2, Heading};

    const E: Heading = Heading(0);
    const N: Heading = Heading(1);

    #[test]
    fn chained_templates() {
        let cs = toy2();
        let t = Trajectory::from_templates(&cs, DiscreteState::new(0, 0, E), [1, 2]).unwrap();
        assert_eq!(t.end(), DiscreteState::new(1, 3, N));
        assert!((t.total_cost - 4.2).abs() < 1e-12);
        let expected: BTreeSet<_> = [(0, 0), (1, 0), (1, 1), (1, 2), (1, 3)]
            .iter()
            .map(|&(i, j)| GridCell::new(i, j))
            .collect();
        assert_eq!(t.collision_trace, expected);
    }

    #[test]
    fn violations() {
        let cs = toy2();
        let grid = OccupancyGrid::empty(10, 10);
        let start = DiscreteState::new(0, 0, E);
        let goal = DiscreteState::new(4, 0, E);
        let good = Trajectory::from_templates(&cs, start, [0, 0]).unwrap();
        assert_eq!(validate_against(&good, &cs, &grid, start, goal), Ok(()));

        let mut gap = good.clone();
        gap.primitives.remove(0);
        gap.primitives
            .insert(0, instantiate(cs.primitive(0), start).unwrap());
        gap.primitives[1] = instantiate(cs.primitive(0), DiscreteState::new(3, 0, E)).unwrap();
        assert!(matches!(
            validate_against(&gap, &cs, &grid, start, goal),
            Err(TrajectoryViolation::Gap { index: 1, .. })
        ));

        let blocked = grid.with_blocked(&[GridCell::new(3, 0)]);
        assert_eq!(
            validate_against(&good, &cs, &blocked, start, goal),
            Err(TrajectoryViolation::Collision(GridCell::new(3, 0)))
        );

        let mut cheap = good.clone();
        cheap.total_cost = 3.0;
        assert!(matches!(
            validate_against(&cheap, &cs, &grid, start, goal),
            Err(TrajectoryViolation::Cost { .. })
        ));

        assert!(matches!(
            validate_against(&good, &cs, &grid, start, DiscreteState::new(2, 0, E)),
            Err(TrajectoryViolation::Goal { .. })
        ));
    }
}
