//! Seeded synthetic maps and scenario files in the MovingAI formats.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::SQRT_2;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::grid_map::{GridCell, OccupancyGrid, ScenarioEntry};

/// Every cell blocked independently with probability `density`.
pub fn random_grid(width: usize, height: usize, density: f64, rng: &mut impl Rng) -> OccupancyGrid {
    let blocked = (0..width * height).map(|_| rng.gen_bool(density)).collect();
    OccupancyGrid::from_blocked(width, height, blocked)
}

/// A perfect maze (randomized depth-first carving) with corridors `corridor`
/// cells wide and walls one cell thick. The map is trimmed to the carved area.
pub fn maze(cols: usize, rows: usize, corridor: usize, rng: &mut impl Rng) -> OccupancyGrid {
    assert!(
        cols > 0 && rows > 0 && corridor > 0,
        "maze needs positive dimensions"
    );
    let pitch = corridor + 1;
    let (width, height) = (cols * pitch + 1, rows * pitch + 1);
    let mut blocked = vec![true; width * height];
    let mut clear = |x0: usize, y0: usize, w: usize, h: usize| {
        for y in y0..y0 + h {
            for x in x0..x0 + w {
                blocked[y * width + x] = false;
            }
        }
    };
    let origin = |c: usize, r: usize| (1 + c * pitch, 1 + r * pitch);
    let mut visited = vec![false; cols * rows];
    let mut stack = vec![(0usize, 0usize)];
    visited[0] = true;
    let (x, y) = origin(0, 0);
    clear(x, y, corridor, corridor);
    while let Some(&(c, r)) = stack.last() {
        let mut next: Vec<(usize, usize)> = Vec::with_capacity(4);
        if c > 0 {
            next.push((c - 1, r));
        }
        if c + 1 < cols {
            next.push((c + 1, r));
        }
        if r > 0 {
            next.push((c, r - 1));
        }
        if r + 1 < rows {
            next.push((c, r + 1));
        }
        next.retain(|&(nc, nr)| !visited[nr * cols + nc]);
        let Some(&(nc, nr)) = next.choose(rng) else {
            stack.pop();
            continue;
        };
        visited[nr * cols + nc] = true;
        let (ax, ay) = origin(c.min(nc), r.min(nr));
        if nc != c {
            clear(ax, ay, 2 * corridor + 1, corridor);
        } else {
            clear(ax, ay, corridor, 2 * corridor + 1);
        }
        stack.push((nc, nr));
    }
    OccupancyGrid::from_blocked(width, height, blocked)
}

/// Open floor with scattered rectangular blocks and a border wall; a rough
/// stand-in for game and city maps.
pub fn rooms(
    width: usize,
    height: usize,
    blocks: usize,
    max_side: usize,
    rng: &mut impl Rng,
) -> OccupancyGrid {
    let mut blocked = vec![false; width * height];
    for y in 0..height {
        for x in 0..width {
            if x == 0 || y == 0 || x + 1 == width || y + 1 == height {
                blocked[y * width + x] = true;
            }
        }
    }
    for _ in 0..blocks {
        let (w, h) = (rng.gen_range(1..=max_side), rng.gen_range(1..=max_side));
        let (x0, y0) = (rng.gen_range(0..width), rng.gen_range(0..height));
        for y in y0..(y0 + h).min(height) {
            for x in x0..(x0 + w).min(width) {
                blocked[y * width + x] = true;
            }
        }
    }
    OccupancyGrid::from_blocked(width, height, blocked)
}

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

/// Shortest 8-connected distances from `from` (no corner cutting), `None`
/// where unreachable. Used for the scenario reference length column.
pub fn octile_distances(grid: &OccupancyGrid, from: GridCell) -> Vec<Option<f64>> {
    let (w, h) = (grid.width(), grid.height());
    let mut dist = vec![None; w * h];
    if grid.is_blocked(from) {
        return dist;
    }
    let idx = |c: GridCell| c.j as usize * w + c.i as usize;
    let mut heap = BinaryHeap::from([Item(0.0, idx(from))]);
    dist[idx(from)] = Some(0.0);
    while let Some(Item(d, u)) = heap.pop() {
        if dist[u].is_some_and(|best| d > best) {
            continue;
        }
        let c = GridCell::new((u % w) as i32, (u / w) as i32);
        for (di, dj) in [
            (1, 0),
            (-1, 0),
            (0, 1),
            (0, -1),
            (1, 1),
            (1, -1),
            (-1, 1),
            (-1, -1),
        ] {
            let n = GridCell::new(c.i + di, c.j + dj);
            if grid.is_blocked(n) {
                continue;
            }
            let diagonal = di != 0 && dj != 0;
            if diagonal
                && (grid.is_blocked(GridCell::new(c.i + di, c.j))
                    || grid.is_blocked(GridCell::new(c.i, c.j + dj)))
            {
                continue;
            }
            let nd = d + if diagonal { SQRT_2 } else { 1.0 };
            if dist[idx(n)].is_none_or(|old| nd < old) {
                dist[idx(n)] = Some(nd);
                heap.push(Item(nd, idx(n)));
            }
        }
    }
    dist
}

/// `count` start/goal pairs on free cells, connected on the 8-grid and at
/// least `min_distance` apart (straight line). Buckets group pairs by
/// reference length in steps of four, as in the benchmark files.
pub fn random_scenarios(
    grid: &OccupancyGrid,
    map_name: &str,
    count: usize,
    min_distance: f64,
    rng: &mut impl Rng,
) -> Vec<ScenarioEntry> {
    let free: Vec<GridCell> = grid.free_cells().collect();
    let mut out = Vec::with_capacity(count);
    if free.len() < 2 {
        return out;
    }
    let mut attempts = 0usize;
    while out.len() < count && attempts < count * 200 {
        attempts += 1;
        let s = free[rng.gen_range(0..free.len())];
        let g = free[rng.gen_range(0..free.len())];
        let (di, dj) = ((s.i - g.i) as f64, (s.j - g.j) as f64);
        if di.hypot(dj) < min_distance {
            continue;
        }
        let Some(len) = octile_distances(grid, s)[g.j as usize * grid.width() + g.i as usize]
        else {
            continue;
        };
        out.push(ScenarioEntry {
            bucket: (len / 4.0) as u32,
            map_name: map_name.to_string(),
            map_width: grid.width(),
            map_height: grid.height(),
            start_cell: s,
            goal_cell: g,
            reference_length: len,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn maze_is_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = maze(6, 5, 3, &mut rng);
        assert_eq!((m.width(), m.height()), (25, 21));
        let free: Vec<_> = m.free_cells().collect();
        let d = octile_distances(&m, free[0]);
        assert!(free
            .iter()
            .all(|c| d[c.j as usize * m.width() + c.i as usize].is_some()));
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_grid(16, 16, 0.2, &mut ChaCha8Rng::seed_from_u64(3));
        let b = random_grid(16, 16, 0.2, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        let sa = random_scenarios(&a, "a.map", 10, 4.0, &mut ChaCha8Rng::seed_from_u64(1));
        let sb = random_scenarios(&b, "a.map", 10, 4.0, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(sa, sb);
        assert!(sa
            .iter()
            .all(|e| !a.is_blocked(e.start_cell) && !a.is_blocked(e.goal_cell)));
    }

    #[test]
    fn octile_on_open_grid() {
        let g = OccupancyGrid::empty(5, 5);
        let d = octile_distances(&g, GridCell::new(0, 0));
        assert_eq!(d[4 * 5 + 4], Some(4.0 * SQRT_2));
        assert_eq!(d[2], Some(2.0));
    }
}
