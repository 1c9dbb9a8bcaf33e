//! The weighted A* engine over a search space of your own: a 4-connected
//! grid where entering a cell costs its terrain value.
//!
//! ```bash
//! cargo run --example custom_search_space
//! ```

use meshplan::search::astar::{Node, SearchSpace, Step, WeightedAStar};
use meshplan::search::{weighted_astar, SearchMetrics};

const TERRAIN: [&str; 5] = ["11111", "19991", "11191", "99111", "11111"];

struct Terrain {
    goal: (i32, i32),
}

impl Terrain {
    fn cost(&self, (x, y): (i32, i32)) -> Option<f64> {
        let row = TERRAIN.get(usize::try_from(y).ok()?)?;
        let c = row.as_bytes().get(usize::try_from(x).ok()?)?;
        Some(f64::from(c - b'0'))
    }
}

impl SearchSpace for Terrain {
    type State = (i32, i32);
    type Key = (i32, i32);
    type Label = ();

    fn key(&self, s: &(i32, i32)) -> (i32, i32) {
        *s
    }

    fn is_goal(&self, s: &(i32, i32)) -> bool {
        *s == self.goal
    }

    fn heuristic(&self, s: &(i32, i32)) -> f64 {
        f64::from((s.0 - self.goal.0).abs() + (s.1 - self.goal.1).abs())
    }

    fn expand(
        &mut self,
        _idx: u32,
        node: &Node<(i32, i32), ()>,
        out: &mut Vec<((i32, i32), f64, ())>,
        metrics: &mut SearchMetrics,
    ) {
        let (x, y) = node.state;
        for n in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
            metrics.collision_checks += 1;
            if let Some(c) = self.cost(n) {
                out.push((n, c, ()));
            }
        }
    }
}

fn main() {
    let path = weighted_astar(Terrain { goal: (4, 4) }, (0, 0), (), 1.0);
    println!(
        "cost {:?} via {:?}",
        path.cost,
        path.states.unwrap_or_default()
    );
    println!(
        "expansions {} generated {}",
        path.metrics.expansions, path.metrics.generated
    );

    // the same search one pop at a time
    let mut search = WeightedAStar::new(Terrain { goal: (4, 4) }, (0, 0), (), 2.0);
    let mut pops = 0;
    let goal = loop {
        pops += 1;
        match search.step() {
            Step::Continue => continue,
            Step::Found(idx) => break Some(idx),
            Step::Exhausted => break None,
        }
    };
    let g = goal.map(|idx| search.node(idx).g);
    println!("w=2: cost {g:?} after {pops} steps");
}
