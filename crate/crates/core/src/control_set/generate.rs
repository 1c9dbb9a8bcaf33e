//! Built-in car-like control-set generator: straight moves and
//! straight-arc-straight turns that start and end exactly on cell centers
//! and on discrete headings.

use std::collections::HashSet;
use std::f64::consts::PI;

use thiserror::Error;

use super::{rasterize, ControlSet, Heading, MotionPrimitive};
use crate::grid_map::GridCell;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("heading count {0} must be a positive multiple of 8")]
    HeadingCount(u16),
    #[error("{field} must be positive and finite, found {value}")]
    Parameter { field: &'static str, value: f64 },
    #[error("no lattice endpoint for turns: {}", .0.iter().map(|(h, r)| format!("(heading {h}, radius {r})")).collect::<Vec<_>>().join(", "))]
    NoSnap(Vec<(Heading, f64)>),
}

/// Integer direction vectors for `k = 8m` headings, counter-clockwise from
/// east. Each quadrant holds `(m, n)` for `n < m` followed by `(m - n, m)`,
/// reduced by their gcd, so every heading has an exact lattice straight move.
pub fn lattice_directions(heading_count: u16) -> Vec<GridCell> {
    let m = (heading_count / 8) as i32;
    let gcd = |mut a: i32, mut b: i32| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs().max(1)
    };
    let mut quadrant = Vec::with_capacity(2 * m as usize);
    for n in 0..m {
        quadrant.push((m, n));
    }
    for n in 0..m {
        quadrant.push((m - n, m));
    }
    let mut out = Vec::with_capacity(heading_count as usize);
    for q in 0..4 {
        for &(x, y) in &quadrant {
            let g = gcd(x, y);
            let (x, y) = (x / g, y / g);
            // rotate by q quarter turns
            let (x, y) = match q {
                0 => (x, y),
                1 => (-y, x),
                2 => (-x, -y),
                _ => (y, -x),
            };
            out.push(GridCell::new(x, y));
        }
    }
    out
}

/// Parameters of the generator. [`generate_arcs`] is the common entry point.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcGenerator {
    pub heading_count: u16,
    /// Straight moves, as multiples of the heading's lattice direction.
    pub straight_lengths: Vec<u32>,
    /// Turn radii in cells.
    pub arc_radii: Vec<f64>,
    /// Heading changes (in heading steps) generated for each radius, both left
    /// and right.
    pub turn_steps: Vec<u16>,
    /// Length of one cell; costs are path lengths in these units.
    pub cell_size: f64,
    /// How far (in cells) around the bare arc endpoint to look for a lattice
    /// endpoint.
    pub snap_window: i32,
}

/// Straights plus single-step left/right turns for every radius.
pub fn generate_arcs(
    heading_count: u16,
    straight_lengths: &[u32],
    arc_radii: &[f64],
    cell_size: f64,
) -> Result<ControlSet, GenerateError> {
    ArcGenerator {
        heading_count,
        straight_lengths: straight_lengths.to_vec(),
        arc_radii: arc_radii.to_vec(),
        turn_steps: vec![1],
        cell_size,
        snap_window: 4,
    }
    .generate()
}

struct Candidate {
    start: Heading,
    end: Heading,
    end_offset: GridCell,
    polyline: Vec<(f64, f64)>,
    length: f64,
}

const SAMPLE_SPACING: f64 = 0.05;

impl ArcGenerator {
    pub fn generate(&self) -> Result<ControlSet, GenerateError> {
        let k = self.heading_count;
        if k == 0 || !k.is_multiple_of(8) {
            return Err(GenerateError::HeadingCount(k));
        }
        if !(self.cell_size.is_finite() && self.cell_size > 0.0) {
            return Err(GenerateError::Parameter {
                field: "cell_size",
                value: self.cell_size,
            });
        }
        if let Some(&r) = self
            .arc_radii
            .iter()
            .find(|r| !(r.is_finite() && **r > 0.0))
        {
            return Err(GenerateError::Parameter {
                field: "arc_radius",
                value: r,
            });
        }
        let dirs = lattice_directions(k);
        let angles: Vec<f64> = dirs
            .iter()
            .map(|d| (d.j as f64).atan2(d.i as f64).rem_euclid(2.0 * PI))
            .collect();

        // every (start, offset, end) triple is used once; a turn whose best
        // endpoint is taken moves to the next best one
        let mut used: HashSet<(Heading, GridCell, Heading)> = HashSet::new();
        let mut kept = Vec::new();
        let mut failures = Vec::new();
        for h in 0..k {
            let dir = dirs[h as usize];
            for &len in self.straight_lengths.iter().filter(|l| **l > 0) {
                let end = GridCell::new(dir.i * len as i32, dir.j * len as i32);
                if used.insert((Heading(h), end, Heading(h))) {
                    kept.push(Candidate {
                        start: Heading(h),
                        end: Heading(h),
                        end_offset: end,
                        polyline: vec![(0.5, 0.5), (end.i as f64 + 0.5, end.j as f64 + 0.5)],
                        length: ((end.i * end.i + end.j * end.j) as f64).sqrt(),
                    });
                }
            }
            for &radius in &self.arc_radii {
                for &steps in self.turn_steps.iter().filter(|s| **s > 0 && **s < k / 2) {
                    for side in [1i32, -1] {
                        let to = (h as i32 + side * steps as i32).rem_euclid(k as i32) as u16;
                        let (from_angle, to_angle) = (angles[h as usize], angles[to as usize]);
                        let free = self
                            .turn_endpoints(from_angle, to_angle, radius)
                            .into_iter()
                            .find(|(_, _, end)| !used.contains(&(Heading(h), *end, Heading(to))));
                        match free {
                            Some((s, t, end)) => {
                                used.insert((Heading(h), end, Heading(to)));
                                let (polyline, length) =
                                    turn_polyline(from_angle, to_angle, radius, s, t, end);
                                kept.push(Candidate {
                                    start: Heading(h),
                                    end: Heading(to),
                                    end_offset: end,
                                    polyline,
                                    length,
                                });
                            }
                            None => failures.push((Heading(h), radius)),
                        }
                    }
                }
            }
        }
        if !failures.is_empty() {
            failures.dedup();
            return Err(GenerateError::NoSnap(failures));
        }

        let primitives = kept
            .into_iter()
            .enumerate()
            .map(|(id, c)| {
                let trace =
                    rasterize(&c.polyline).expect("generator polylines have at least two points");
                MotionPrimitive {
                    id: id as u32,
                    start_heading: c.start,
                    end_heading: c.end,
                    end_offset: c.end_offset,
                    trace,
                    cost: c.length * self.cell_size,
                }
            })
            .collect();
        Ok(ControlSet {
            heading_count: k,
            headings_degrees: angles.iter().map(|a| a.to_degrees()).collect(),
            primitives,
        })
    }

    /// Lattice endpoints for a straight (along `from`), circular arc,
    /// straight (along `to`) turn, best first: least extra straight length,
    /// then the shorter leading straight.
    fn turn_endpoints(&self, from: f64, to: f64, radius: f64) -> Vec<(f64, f64, GridCell)> {
        let delta = signed_turn(from, to);
        let sign = delta.signum();
        let arc_end = (
            sign * radius * (to.sin() - from.sin()),
            sign * radius * (from.cos() - to.cos()),
        );
        let ua = (from.cos(), from.sin());
        let ub = (to.cos(), to.sin());
        let det = ua.0 * ub.1 - ua.1 * ub.0;
        if det.abs() < 1e-12 {
            return Vec::new();
        }
        let w = self.snap_window;
        let (cx, cy) = (arc_end.0.round() as i32, arc_end.1.round() as i32);
        let mut out = Vec::new();
        for px in cx - w..=cx + w {
            for py in cy - w..=cy + w {
                if px == 0 && py == 0 {
                    continue;
                }
                let (rx, ry) = (px as f64 - arc_end.0, py as f64 - arc_end.1);
                // solve s*ua + t*ub = r
                let s = (rx * ub.1 - ry * ub.0) / det;
                let t = (ua.0 * ry - ua.1 * rx) / det;
                if s < -1e-9 || t < -1e-9 {
                    continue;
                }
                out.push((s.max(0.0), t.max(0.0), GridCell::new(px, py)));
            }
        }
        // rounded keys keep mirrored turns in mirrored order
        let key = |v: f64| (v * 1e9).round() as i64;
        out.sort_by_key(|&(s, t, end)| (key(s + t), key(s), end));
        out
    }
}

fn signed_turn(from: f64, to: f64) -> f64 {
    let delta = (to - from).rem_euclid(2.0 * PI);
    if delta > PI {
        delta - 2.0 * PI
    } else {
        delta
    }
}

/// Sampled polyline (cell-center coordinates) and length of a turn with
/// leading straight `s` and trailing straight `t`.
fn turn_polyline(
    from: f64,
    to: f64,
    radius: f64,
    s: f64,
    t: f64,
    end: GridCell,
) -> (Vec<(f64, f64)>, f64) {
    let delta = signed_turn(from, to);
    let sign = delta.signum();
    let arc_len = radius * delta.abs();
    let mut pts = vec![(0.5, 0.5)];
    let p1 = (0.5 + s * from.cos(), 0.5 + s * from.sin());
    if s > 0.0 {
        pts.push(p1);
    }
    // center of the turning circle, left of the heading for left turns
    let center = (
        p1.0 - sign * radius * from.sin(),
        p1.1 + sign * radius * from.cos(),
    );
    let n = ((arc_len / SAMPLE_SPACING).ceil() as usize).max(1);
    for step in 1..=n {
        let phi = from + delta * step as f64 / n as f64;
        pts.push((
            center.0 + sign * radius * phi.sin(),
            center.1 - sign * radius * phi.cos(),
        ));
    }
    pts.push((end.i as f64 + 0.5, end.j as f64 + 0.5));
    (pts, s + arc_len + t)
}
