//! The state lattice: discrete states joined by primitive instances.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::control_set::{instantiate, ControlSet, Heading, PrimitiveInstance};
use crate::grid_map::{GridCell, OccupancyGrid};

/// `(i, j, heading)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32, u16)", into = "(i32, i32, u16)")]
pub struct DiscreteState {
    pub i: i32,
    pub j: i32,
    pub heading: Heading,
}

impl DiscreteState {
    pub const fn new(i: i32, j: i32, heading: Heading) -> Self {
        Self { i, j, heading }
    }

    pub const fn at(cell: GridCell, heading: Heading) -> Self {
        Self {
            i: cell.i,
            j: cell.j,
            heading,
        }
    }

    pub const fn cell(&self) -> GridCell {
        GridCell::new(self.i, self.j)
    }
}

impl From<(i32, i32, u16)> for DiscreteState {
    fn from((i, j, h): (i32, i32, u16)) -> Self {
        Self::new(i, j, Heading(h))
    }
}

impl From<DiscreteState> for (i32, i32, u16) {
    fn from(s: DiscreteState) -> Self {
        (s.i, s.j, s.heading.0)
    }
}

impl fmt::Display for DiscreteState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.i, self.j, self.heading)
    }
}

/// Every primitive applicable at `s`, instantiated, with its cost.
/// No collision filtering happens here.
pub fn lattice_successors(s: DiscreteState, cs: &ControlSet) -> Vec<(PrimitiveInstance, f64)> {
    cs.starting_at(s.heading)
        .map(|p| {
            (
                instantiate(p, s).expect("heading matches by construction"),
                p.cost,
            )
        })
        .collect()
}

/// Whether every trace cell is free, and how many cells were examined before
/// the answer was known.
pub fn trace_is_free(inst: &PrimitiveInstance, grid: &OccupancyGrid) -> (bool, u64) {
    cells_free(&inst.absolute_trace, grid)
}

pub(crate) fn cells_free(cells: &[GridCell], grid: &OccupancyGrid) -> (bool, u64) {
    let mut checks = 0;
    for &c in cells {
        checks += 1;
        if grid.is_blocked(c) {
            return (false, checks);
        }
    }
    (true, checks)
}

/// Collision check of a template trace placed at `origin`, without building an
/// instance.
pub(crate) fn shifted_trace_free(
    trace: &[GridCell],
    origin: GridCell,
    grid: &OccupancyGrid,
) -> (bool, u64) {
    let mut checks = 0;
    for &c in trace {
        checks += 1;
        if grid.is_blocked(c + origin) {
            return (false, checks);
        }
    }
    (true, checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control_set::toy2;

    const E: Heading = Heading(0);
    const N: Heading = Heading(1);

    #[test]
    fn toy2_successors_from_east() {
        let cs = toy2();
        let succ = lattice_successors(DiscreteState::new(0, 0, E), &cs);
        let summary: Vec<_> = succ
            .iter()
            .map(|(inst, c)| (inst.template_id, inst.end_state, *c))
            .collect();
        assert_eq!(
            summary,
            vec![
                (0, DiscreteState::new(2, 0, E), 2.0),
                (1, DiscreteState::new(1, 1, N), 2.2)
            ]
        );
    }

    #[test]
    fn heading_without_primitives() {
        let mut cs = toy2();
        cs.heading_count = 3;
        cs.headings_degrees.push(180.0);
        assert!(lattice_successors(DiscreteState::new(0, 0, Heading(2)), &cs).is_empty());
    }

    #[test]
    fn successors_translate() {
        let cs = toy2();
        let base = lattice_successors(DiscreteState::new(0, 0, E), &cs);
        let moved = lattice_successors(DiscreteState::new(5, 7, E), &cs);
        let shift = GridCell::new(5, 7);
        for ((a, ca), (b, cb)) in base.iter().zip(&moved) {
            assert_eq!(ca, cb);
            assert_eq!(b.end_state.cell(), a.end_state.cell() + shift);
            let shifted: Vec<_> = a.absolute_trace.iter().map(|&c| c + shift).collect();
            assert_eq!(b.absolute_trace, shifted);
        }
    }

    #[test]
    fn collision_checks_short_circuit() {
        let cs = toy2();
        let inst = instantiate(cs.primitive(0), DiscreteState::new(0, 0, E)).unwrap();
        let grid = OccupancyGrid::empty(10, 10);
        assert_eq!(trace_is_free(&inst, &grid), (true, 3));
        let walled = grid.with_blocked(&[GridCell::new(1, 0)]);
        assert_eq!(trace_is_free(&inst, &walled), (false, 2));

        let edge = instantiate(cs.primitive(0), DiscreteState::new(8, 0, E)).unwrap();
        assert_eq!(trace_is_free(&edge, &grid), (false, 3));
    }
}
