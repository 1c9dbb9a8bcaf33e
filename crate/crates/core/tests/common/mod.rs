#![allow(dead_code)]

use std::path::PathBuf;

use meshplan::bench::synth::random_grid;
use meshplan::control_set::{generate_arcs, toy2, ControlSet, Heading};
use meshplan::grid_map::{GridCell, OccupancyGrid};
use meshplan::lattice::DiscreteState;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn gen8() -> ControlSet {
    generate_arcs(8, &[1, 2], &[2.0, 3.0], 1.0).expect("gen8 parameters are valid")
}

pub struct Query {
    pub grid: usize,
    pub start: DiscreteState,
    pub goal: DiscreteState,
}

pub struct Corpus {
    pub name: &'static str,
    pub control_set: ControlSet,
    pub grids: Vec<OccupancyGrid>,
    pub queries: Vec<Query>,
}

fn random_free(grid: &OccupancyGrid, rng: &mut impl Rng) -> GridCell {
    loop {
        let c = GridCell::new(
            rng.gen_range(0..grid.width() as i32),
            rng.gen_range(0..grid.height() as i32),
        );
        if !grid.is_blocked(c) {
            return c;
        }
    }
}

/// Seeded 32x32 grids at 20% density with `per_grid` queries each.
///
/// TOY2 only moves east and north, so its goals are drawn up and to the right
/// of the start; otherwise almost no query would be solvable.
pub fn corpus(
    name: &'static str,
    cs: ControlSet,
    grids: usize,
    per_grid: usize,
    seed: u64,
) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monotone = name == "toy2";
    let mut out = Corpus {
        name,
        grids: Vec::with_capacity(grids),
        queries: Vec::with_capacity(grids * per_grid),
        control_set: cs,
    };
    for g in 0..grids {
        let grid = random_grid(32, 32, 0.2, &mut rng);
        for _ in 0..per_grid {
            let s = random_free(&grid, &mut rng);
            let t = loop {
                let t = random_free(&grid, &mut rng);
                if !monotone || (t.i >= s.i && t.j >= s.j) {
                    break t;
                }
            };
            let k = out.control_set.heading_count;
            out.queries.push(Query {
                grid: g,
                start: DiscreteState::at(s, Heading(rng.gen_range(0..k))),
                goal: DiscreteState::at(t, Heading(rng.gen_range(0..k))),
            });
        }
        out.grids.push(grid);
    }
    out
}

pub fn corpora(grids: usize, per_grid: usize) -> [Corpus; 2] {
    [
        corpus("toy2", toy2(), grids, per_grid, 0x70e2),
        corpus("gen8", gen8(), grids, per_grid, 0x8e8),
    ]
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// Small random control sets: a few headings, each with a few primitives
/// whose traces are self-avoiding 8-connected walks from the origin. Costs
/// are the walk length, never below the straight-line distance.
pub fn arb_control_set() -> impl proptest::strategy::Strategy<Value = ControlSet> {
    use proptest::prelude::*;
    const STEPS: [(i32, i32); 8] = [
        (1, 0),
        (1, 1),
        (0, 1),
        (-1, 1),
        (-1, 0),
        (-1, -1),
        (0, -1),
        (1, -1),
    ];
    (2u16..=4, any::<u64>()).prop_map(|(k, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut prims = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for h in 0..k {
            for _ in 0..rng.gen_range(1..=4) {
                let len = rng.gen_range(2..=6);
                let mut trace = vec![GridCell::ORIGIN];
                let mut cost = 0.0;
                while trace.len() < len {
                    let (di, dj) = STEPS[rng.gen_range(0..8)];
                    let next = *trace.last().unwrap() + GridCell::new(di, dj);
                    if trace.contains(&next) {
                        continue;
                    }
                    cost += f64::from(di * di + dj * dj).sqrt();
                    trace.push(next);
                }
                let end_heading = Heading(rng.gen_range(0..k));
                let end = *trace.last().unwrap();
                if !seen.insert((h, end, end_heading)) {
                    continue;
                }
                prims.push(meshplan::control_set::MotionPrimitive {
                    id: prims.len() as u32,
                    start_heading: Heading(h),
                    end_heading,
                    end_offset: end,
                    trace,
                    cost,
                });
            }
        }
        ControlSet {
            heading_count: k,
            headings_degrees: Vec::new(),
            primitives: prims,
        }
    })
}
