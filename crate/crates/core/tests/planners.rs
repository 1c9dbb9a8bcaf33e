mod common;

use common::{arb_control_set, gen8, rel_diff};
use meshplan::bench::synth::random_grid;
use meshplan::control_set::{toy2, ControlSet, Heading};
use meshplan::grid_map::{GridCell, OccupancyGrid};
use meshplan::lattice::DiscreteState;
use meshplan::mesh_graph::MeshTables;
use meshplan::search::{
    dijkstra_oracle, plan_lazy_lba, plan_lba, plan_mesh, plan_mesh_parall, plan_mesh_pruning,
    validate_trajectory, Algorithm, PlanRequest, PlanResult, SearchMetrics,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

#[derive(Debug)]
struct Case {
    cs: ControlSet,
    grid: OccupancyGrid,
    start: DiscreteState,
    goal: DiscreteState,
}

fn arb_set() -> impl Strategy<Value = ControlSet> {
    prop_oneof![Just(toy2()), Just(gen8()), arb_control_set()]
}

fn arb_case() -> impl Strategy<Value = Case> {
    (
        arb_set(),
        6usize..16,
        0.0f64..0.35,
        any::<u64>(),
        any::<[u16; 6]>(),
    )
        .prop_map(|(cs, side, density, seed, r)| {
            let grid = random_grid(side, side, density, &mut ChaCha8Rng::seed_from_u64(seed));
            let k = cs.heading_count;
            let s = side as u16;
            let state = |a: u16, b: u16, h: u16| {
                DiscreteState::new((a % s) as i32, (b % s) as i32, Heading(h % k))
            };
            Case {
                start: state(r[0], r[1], r[2]),
                goal: state(r[3], r[4], r[5]),
                cs,
                grid,
            }
        })
}

fn same_metrics(a: &SearchMetrics, b: &SearchMetrics) -> bool {
    (
        a.expansions,
        a.generated,
        a.collision_checks,
        a.solved,
        a.cost,
    ) == (
        b.expansions,
        b.generated,
        b.collision_checks,
        b.solved,
        b.cost,
    )
}

fn check_result(r: &PlanResult, req: &PlanRequest) -> Result<(), TestCaseError> {
    prop_assert_eq!(r.solved(), r.trajectory.is_some());
    prop_assert_eq!(r.metrics.solved, r.solved());
    prop_assert!(r.metrics.collision_checks >= 2);
    if let Some(t) = &r.trajectory {
        prop_assert_eq!(validate_trajectory(t, req), Ok(()));
        prop_assert_eq!(r.cost(), Some(t.total_cost));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exact_planners_match_oracle(case in arb_case()) {
        let tables = MeshTables::build(&case.cs);
        let req = PlanRequest::new(&case.grid, &case.cs, &tables, case.start, case.goal);
        let oracle = dijkstra_oracle(&req);
        for r in [plan_lba(&req), plan_lazy_lba(&req), plan_mesh(&req)] {
            check_result(&r, &req)?;
            match (oracle, r.cost()) {
                (Some(o), Some(c)) => prop_assert!(rel_diff(o, c) <= TOL, "oracle {} got {}", o, c),
                (None, None) => {}
                (o, c) => prop_assert!(false, "solvability differs: oracle {:?} got {:?}", o, c),
            }
        }
    }

    #[test]
    fn pruning_and_hybrid(case in arb_case(), k in 1u32..200) {
        let tables = MeshTables::build(&case.cs);
        let req = PlanRequest::new(&case.grid, &case.cs, &tables, case.start, case.goal);
        let oracle = dijkstra_oracle(&req);
        let pruning = plan_mesh_pruning(&req);
        let parall = plan_mesh_parall(&req, k);
        check_result(&pruning, &req)?;
        check_result(&parall, &req)?;
        prop_assert_eq!(parall.solved(), oracle.is_some());
        for r in [&pruning, &parall] {
            if let Some(c) = r.cost() {
                prop_assert!(c >= oracle.unwrap() * (1.0 - TOL));
            }
        }
    }

    #[test]
    fn weighted_costs_stay_bounded(case in arb_case(), w in 1.0f64..6.0) {
        let tables = MeshTables::build(&case.cs);
        let req = PlanRequest::new(&case.grid, &case.cs, &tables, case.start, case.goal)
            .with_weight(w);
        let Some(o) = dijkstra_oracle(&req) else {
            return Ok(());
        };
        for r in [plan_lba(&req), plan_lazy_lba(&req), plan_mesh(&req)] {
            check_result(&r, &req)?;
            let c = r.cost().expect("weighting never loses a solution");
            prop_assert!(c <= w * o * (1.0 + TOL) + TOL, "cost {} above {} * {}", c, w, o);
        }
    }

    #[test]
    fn planners_are_deterministic(case in arb_case()) {
        let tables = MeshTables::build(&case.cs);
        let req = PlanRequest::new(&case.grid, &case.cs, &tables, case.start, case.goal);
        for algo in Algorithm::ALL {
            let (a, b) = (algo.plan(&req, 7), algo.plan(&req, 7));
            prop_assert!(same_metrics(&a.metrics, &b.metrics), "{}", algo);
            prop_assert_eq!(
                a.trajectory.map(|t| t.template_ids()),
                b.trajectory.map(|t| t.template_ids())
            );
        }
    }
}

#[test]
fn start_equals_goal_is_empty_for_every_planner() {
    let cs = gen8();
    let tables = MeshTables::build(&cs);
    let grid = OccupancyGrid::empty(6, 6);
    let s = DiscreteState::new(2, 3, Heading(5));
    let req = PlanRequest::new(&grid, &cs, &tables, s, s);
    for algo in Algorithm::ALL {
        let r = algo.plan(&req, 100);
        let t = r.trajectory.expect("trivially solved");
        assert!(t.primitives.is_empty(), "{algo}");
        assert_eq!(t.total_cost, 0.0);
        assert_eq!(r.metrics.collision_checks, 2);
        assert_eq!(r.metrics.expansions, 0);
    }
}

#[test]
fn blocked_endpoints_are_unsolved() {
    let cs = gen8();
    let tables = MeshTables::build(&cs);
    let grid = OccupancyGrid::empty(8, 8).with_blocked(&[GridCell::new(6, 6)]);
    let req = PlanRequest::new(
        &grid,
        &cs,
        &tables,
        DiscreteState::new(1, 1, Heading(0)),
        DiscreteState::new(6, 6, Heading(0)),
    );
    for algo in Algorithm::ALL {
        let r = algo.plan(&req, 100);
        assert!(!r.solved(), "{algo}");
        assert_eq!(r.metrics.expansions, 0);
    }
    assert_eq!(dijkstra_oracle(&req), None);
}

#[test]
fn mesh_checks_each_cell_once_per_generated_node_on_open_grid() {
    // every mesh edge enters one cell, so every generated node cost one check
    // (plus the start and goal cells)
    let cs = gen8();
    let tables = MeshTables::build(&cs);
    let grid = OccupancyGrid::empty(20, 20);
    let req = PlanRequest::new(
        &grid,
        &cs,
        &tables,
        DiscreteState::new(2, 2, Heading(0)),
        DiscreteState::new(15, 12, Heading(2)),
    );
    let r = plan_mesh(&req);
    assert!(r.solved());
    assert!(r.metrics.collision_checks >= r.metrics.generated);
}

#[test]
fn lazy_lattice_checks_fewer_cells_on_open_grid() {
    let cs = gen8();
    let tables = MeshTables::build(&cs);
    let grid = OccupancyGrid::empty(30, 30);
    let req = PlanRequest::new(
        &grid,
        &cs,
        &tables,
        DiscreteState::new(1, 1, Heading(1)),
        DiscreteState::new(27, 20, Heading(0)),
    );
    let (eager, lazy) = (plan_lba(&req), plan_lazy_lba(&req));
    let (a, b) = (eager.cost().unwrap(), lazy.cost().unwrap());
    assert!(rel_diff(a, b) <= TOL, "{a} vs {b}");
    assert!(lazy.metrics.collision_checks < eager.metrics.collision_checks);
}
