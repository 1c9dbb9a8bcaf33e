use std::collections::HashSet;
use std::time::Instant;

use super::astar::{Admission, Node, SearchSpace, WeightedAStar};
use super::{trivial_outcome, PlanRequest, PlanResult, SearchMetrics, Trajectory};
use crate::control_set::{ControlSet, Heading, PrimitiveId};
use crate::grid_map::GridCell;
use crate::lattice::DiscreteState;
use crate::mesh_graph::{ConfigId, ExtendedCell, MeshTables, SuccessorKind};

/// Search state of the mesh planners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshNode {
    pub cell: ExtendedCell,
    /// Arena index of the closest initial node strictly before this one.
    pub parent_initial: Option<u32>,
    /// Primitive completed on entering this node; set iff the node is initial
    /// and not the start.
    pub entering_primitive: Option<PrimitiveId>,
}

/// Heuristic of an extended cell given the base heuristic `base` (distance
/// from a cell to the goal). Initial cells take the base value; otherwise the
/// cheapest way to finish one of the member primitives and continue from its
/// end.
pub fn mesh_h(node: ExtendedCell, tables: &MeshTables, base: impl Fn(GridCell) -> f64) -> f64 {
    if tables.is_initial(node.config) {
        return base(node.cell());
    }
    tables
        .primitive_ends(node.config)
        .iter()
        .map(|e| base(node.cell() + e.end_delta) + e.cost)
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum MeshKey {
    Exact(i32, i32, ConfigId),
    Soft(i32, i32, u32),
}

pub(crate) struct MeshSpace<'r, 'a> {
    req: &'r PlanRequest<'a>,
    goal: ExtendedCell,
    pruning: bool,
    /// Initial cells already expanded, as `(i, j, heading)`.
    expanded_initial: HashSet<(i32, i32, Heading)>,
}

impl<'r, 'a> MeshSpace<'r, 'a> {
    pub(crate) fn new(req: &'r PlanRequest<'a>, pruning: bool) -> Self {
        let goal = ExtendedCell::new(req.goal.cell(), req.tables.initial_of(req.goal.heading));
        Self {
            req,
            goal,
            pruning,
            expanded_initial: HashSet::new(),
        }
    }

    pub(crate) fn start(&self) -> MeshNode {
        MeshNode {
            cell: ExtendedCell::new(
                self.req.start.cell(),
                self.req.tables.initial_of(self.req.start.heading),
            ),
            parent_initial: None,
            entering_primitive: None,
        }
    }
}

impl SearchSpace for MeshSpace<'_, '_> {
    type State = MeshNode;
    type Key = MeshKey;
    type Label = ();

    fn key(&self, s: &MeshNode) -> MeshKey {
        let c = s.cell;
        if self.pruning {
            MeshKey::Soft(c.i, c.j, self.req.tables.soft_id(c.config))
        } else {
            MeshKey::Exact(c.i, c.j, c.config)
        }
    }

    fn is_goal(&self, s: &MeshNode) -> bool {
        s.cell == self.goal
    }

    fn heuristic(&self, s: &MeshNode) -> f64 {
        mesh_h(s.cell, self.req.tables, |c| self.req.h(c))
    }

    fn admit(&mut self, s: &MeshNode, _label: &(), _metrics: &mut SearchMetrics) -> Admission {
        let tables = self.req.tables;
        let (i, j) = (s.cell.i, s.cell.j);
        if let Some(h) = tables.heading_of_initial(s.cell.config) {
            self.expanded_initial.insert((i, j, h));
            return Admission::Expand;
        }
        let cell = s.cell.cell();
        let pointless = tables.primitive_ends(s.cell.config).iter().all(|e| {
            let end = cell + e.end_delta;
            self.expanded_initial
                .contains(&(end.i, end.j, e.end_heading))
        });
        if pointless {
            Admission::Discard { counted: false }
        } else {
            Admission::Expand
        }
    }

    fn expand(
        &mut self,
        idx: u32,
        node: &Node<MeshNode, ()>,
        out: &mut Vec<(MeshNode, f64, ())>,
        metrics: &mut SearchMetrics,
    ) {
        let tables = self.req.tables;
        let here = node.state.cell;
        let parent_initial = if tables.is_initial(here.config) {
            Some(idx)
        } else {
            node.state.parent_initial
        };
        for (v, r) in tables.successors(here) {
            metrics.collision_checks += 1;
            if self.req.grid.is_blocked(v.cell()) {
                continue;
            }
            let entering_primitive = match r.kind {
                SuccessorKind::Initial => r.via,
                SuccessorKind::NonInitial => None,
            };
            out.push((
                MeshNode {
                    cell: v,
                    parent_initial,
                    entering_primitive,
                },
                r.cost,
                (),
            ));
        }
    }
}

/// Trajectory of a goal node from its chain of initial ancestors.
pub fn reconstruct_trajectory(
    goal: u32,
    nodes: impl Fn(u32) -> MeshNode,
    cs: &ControlSet,
    start: DiscreteState,
) -> Trajectory {
    let mut ids = Vec::new();
    let mut cur = nodes(goal);
    while let Some(parent) = cur.parent_initial {
        ids.push(
            cur.entering_primitive
                .expect("initial node past the start has an entering primitive"),
        );
        cur = nodes(parent);
    }
    assert!(
        cur.entering_primitive.is_none(),
        "initial chain must end at the start node"
    );
    ids.reverse();
    Trajectory::from_templates(cs, start, ids).expect("primitives along a mesh path chain")
}

/// Trajectory of a full mesh path by scanning it for initial cells: the
/// cells between two consecutive initial cells are exactly the trace of the
/// one primitive joining them. Slower than [`reconstruct_trajectory`]; kept
/// as a cross-check.
pub fn reconstruct_alg3(
    path: &[ExtendedCell],
    tables: &MeshTables,
    cs: &ControlSet,
) -> Option<Trajectory> {
    let first = path.first()?;
    let start = DiscreteState::at(first.cell(), tables.heading_of_initial(first.config)?);
    let marks: Vec<usize> = (0..path.len())
        .filter(|&p| tables.is_initial(path[p].config))
        .collect();
    let mut ids = Vec::new();
    for w in marks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let from = tables.heading_of_initial(path[a].config)?;
        let to = tables.heading_of_initial(path[b].config)?;
        let origin = path[a].cell();
        let swept: Vec<GridCell> = path[a..=b].iter().map(|u| u.cell() - origin).collect();
        let prim = cs
            .starting_at(from)
            .find(|p| p.end_heading == to && p.trace == swept)?;
        ids.push(prim.id);
    }
    Trajectory::from_templates(cs, start, ids).ok()
}

/// Full output of a mesh search: the plan plus the mesh path behind it.
#[derive(Debug, Clone)]
pub struct MeshSearchOutput {
    pub result: PlanResult,
    /// Vertices from the start to the goal, when solved.
    pub path: Option<Vec<ExtendedCell>>,
    /// g of the goal node.
    pub goal_g: Option<f64>,
}

pub(crate) fn run_mesh(req: &PlanRequest, pruning: bool) -> MeshSearchOutput {
    let t0 = Instant::now();
    if let Some(done) = trivial_outcome(req) {
        let path = done
            .solved()
            .then(|| vec![MeshSpace::new(req, pruning).start().cell]);
        let goal_g = done.cost();
        return MeshSearchOutput {
            result: done,
            path,
            goal_g,
        };
    }
    let space = MeshSpace::new(req, pruning);
    let start = space.start();
    let mut search = WeightedAStar::new(space, start, (), req.weight);
    let found = search.run();
    finish_mesh(&search, found, t0, req)
}

pub(crate) fn finish_mesh(
    search: &WeightedAStar<MeshSpace>,
    found: Option<u32>,
    t0: Instant,
    req: &PlanRequest,
) -> MeshSearchOutput {
    let mut metrics = search.metrics().clone();
    metrics.collision_checks += 2;
    metrics.runtime = t0.elapsed();
    match found {
        Some(goal) => {
            let t =
                reconstruct_trajectory(goal, |i| search.node(i).state, req.control_set, req.start);
            let path = search
                .path_to(goal)
                .into_iter()
                .map(|i| search.node(i).state.cell)
                .collect();
            let goal_g = search.node(goal).g;
            MeshSearchOutput {
                result: PlanResult::solved_with(t, metrics),
                path: Some(path),
                goal_g: Some(goal_g),
            }
        }
        None => MeshSearchOutput {
            result: PlanResult::unsolved(metrics),
            path: None,
            goal_g: None,
        },
    }
}

/// A* on the mesh graph between the initial extended cells of start and goal.
pub fn plan_mesh(req: &PlanRequest) -> PlanResult {
    run_mesh(req, false).result
}

/// [`plan_mesh`] with soft duplicates merged: nodes are identified by
/// `(i, j, soft id)`. Faster, but can miss solutions.
pub fn plan_mesh_pruning(req: &PlanRequest) -> PlanResult {
    run_mesh(req, true).result
}

impl PlanRequest<'_> {
    /// Run the mesh search (optionally with soft-duplicate pruning) and keep
    /// the mesh path.
    pub fn mesh_search(&self, pruning: bool) -> MeshSearchOutput {
        run_mesh(self, pruning)
    }
}
