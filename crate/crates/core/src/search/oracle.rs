use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use super::PlanRequest;
use crate::lattice::DiscreteState;

#[derive(PartialEq)]
struct Entry(f64, DiscreteState);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

/// Optimal cost by uniform-cost search on the lattice, every primitive
/// checked cell by cell before it is relaxed. Ignores the request weight.
pub fn dijkstra_oracle(req: &PlanRequest) -> Option<f64> {
    let (grid, cs) = (req.grid, req.control_set);
    if grid.is_blocked(req.start.cell()) || grid.is_blocked(req.goal.cell()) {
        return None;
    }
    let mut dist: HashMap<DiscreteState, f64> = HashMap::from([(req.start, 0.0)]);
    let mut heap = BinaryHeap::from([Entry(0.0, req.start)]);
    while let Some(Entry(d, s)) = heap.pop() {
        if d > dist[&s] {
            continue;
        }
        if s == req.goal {
            return Some(d);
        }
        for p in cs
            .primitives
            .iter()
            .filter(|p| p.start_heading == s.heading)
        {
            let blocked = p.trace.iter().any(|&c| grid.is_blocked(c + s.cell()));
            if blocked {
                continue;
            }
            let next = DiscreteState::at(s.cell() + p.end_offset, p.end_heading);
            let nd = d + p.cost;
            if dist.get(&next).is_none_or(|&old| nd < old) {
                dist.insert(next, nd);
                heap.push(Entry(nd, next));
            }
        }
    }
    None
}
