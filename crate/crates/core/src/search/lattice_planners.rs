use std::time::Instant;

use super::astar::{Admission, DuplicatePolicy, Node, SearchSpace, WeightedAStar};
use super::{trivial_outcome, PlanRequest, PlanResult, SearchMetrics, Trajectory};
use crate::control_set::PrimitiveId;
use crate::grid_map::GridCell;
use crate::lattice::{shifted_trace_free, DiscreteState};

/// Lattice search with every generated primitive checked up front.
pub(crate) struct EagerLattice<'r, 'a> {
    pub(crate) req: &'r PlanRequest<'a>,
}

impl SearchSpace for EagerLattice<'_, '_> {
    type State = DiscreteState;
    type Key = DiscreteState;
    type Label = Option<PrimitiveId>;

    fn key(&self, s: &DiscreteState) -> DiscreteState {
        *s
    }

    fn is_goal(&self, s: &DiscreteState) -> bool {
        *s == self.req.goal
    }

    fn heuristic(&self, s: &DiscreteState) -> f64 {
        self.req.h(s.cell())
    }

    fn expand(
        &mut self,
        _idx: u32,
        node: &Node<DiscreteState, Option<PrimitiveId>>,
        out: &mut Vec<(DiscreteState, f64, Option<PrimitiveId>)>,
        metrics: &mut SearchMetrics,
    ) {
        let origin = node.state.cell();
        for p in self.req.control_set.starting_at(node.state.heading) {
            let (free, checks) = shifted_trace_free(&p.trace, origin, self.req.grid);
            metrics.collision_checks += checks;
            if free {
                out.push((
                    DiscreteState::at(origin + p.end_offset, p.end_heading),
                    p.cost,
                    Some(p.id),
                ));
            }
        }
    }
}

/// Lattice search that defers the trace check of a primitive until the state
/// it reaches is popped.
struct LazyLattice<'r, 'a> {
    req: &'r PlanRequest<'a>,
}

impl SearchSpace for LazyLattice<'_, '_> {
    type State = DiscreteState;
    type Key = DiscreteState;
    /// Generating primitive and the cell it was applied at.
    type Label = Option<(PrimitiveId, GridCell)>;

    const POLICY: DuplicatePolicy = DuplicatePolicy::UntilClosed;

    fn key(&self, s: &DiscreteState) -> DiscreteState {
        *s
    }

    fn is_goal(&self, s: &DiscreteState) -> bool {
        *s == self.req.goal
    }

    fn heuristic(&self, s: &DiscreteState) -> f64 {
        self.req.h(s.cell())
    }

    fn admit(
        &mut self,
        _s: &DiscreteState,
        label: &Self::Label,
        metrics: &mut SearchMetrics,
    ) -> Admission {
        let Some((id, origin)) = *label else {
            return Admission::Expand;
        };
        let (free, checks) = shifted_trace_free(
            &self.req.control_set.primitive(id).trace,
            origin,
            self.req.grid,
        );
        metrics.collision_checks += checks;
        if free {
            Admission::Expand
        } else {
            Admission::Discard { counted: true }
        }
    }

    fn expand(
        &mut self,
        _idx: u32,
        node: &Node<DiscreteState, Self::Label>,
        out: &mut Vec<(DiscreteState, f64, Self::Label)>,
        _metrics: &mut SearchMetrics,
    ) {
        let origin = node.state.cell();
        for p in self.req.control_set.starting_at(node.state.heading) {
            out.push((
                DiscreteState::at(origin + p.end_offset, p.end_heading),
                p.cost,
                Some((p.id, origin)),
            ));
        }
    }
}

pub(crate) fn lattice_trajectory<P>(
    search: &WeightedAStar<P>,
    goal: u32,
    req: &PlanRequest,
    id: impl Fn(&P::Label) -> Option<PrimitiveId>,
) -> Trajectory
where
    P: SearchSpace<State = DiscreteState>,
{
    let ids = search
        .path_to(goal)
        .into_iter()
        .filter_map(|i| id(&search.node(i).label));
    Trajectory::from_templates(req.control_set, req.start, ids)
        .expect("lattice path chains by construction")
}

fn finish<P>(
    mut search: WeightedAStar<P>,
    t0: Instant,
    req: &PlanRequest,
    id: impl Fn(&P::Label) -> Option<PrimitiveId>,
) -> PlanResult
where
    P: SearchSpace<State = DiscreteState>,
{
    let found = search.run();
    let mut metrics = search.metrics().clone();
    metrics.collision_checks += 2;
    metrics.runtime = t0.elapsed();
    match found {
        Some(goal) => PlanResult::solved_with(lattice_trajectory(&search, goal, req, id), metrics),
        None => PlanResult::unsolved(metrics),
    }
}

/// A* on the state lattice with eager collision checking.
pub fn plan_lba(req: &PlanRequest) -> PlanResult {
    let t0 = Instant::now();
    if let Some(done) = trivial_outcome(req) {
        return done;
    }
    let search = WeightedAStar::new(EagerLattice { req }, req.start, None, req.weight);
    finish(search, t0, req, |l| *l)
}

/// A* on the state lattice with lazy collision checking: a popped state whose
/// generating primitive turns out to collide is discarded, and counts as an
/// expansion.
pub fn plan_lazy_lba(req: &PlanRequest) -> PlanResult {
    let t0 = Instant::now();
    if let Some(done) = trivial_outcome(req) {
        return done;
    }
    let search = WeightedAStar::new(LazyLattice { req }, req.start, None, req.weight);
    finish(search, t0, req, |l| l.map(|(id, _)| id))
}
