//! Static SVG pictures of a map and a trajectory.

use std::fmt::Write as _;

use crate::grid_map::{GridCell, OccupancyGrid};
use crate::search::Trajectory;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    /// Side of one cell in pixels.
    pub cell_px: u32,
    /// Draw grid lines.
    pub grid_lines: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            cell_px: 12,
            grid_lines: true,
        }
    }
}

/// Render the grid, blocked cells and (when given and non-empty) the swept
/// cells, one polyline per primitive, and start/goal markers.
///
/// Each polyline runs through the centers of its primitive's trace cells.
/// Output depends only on the inputs.
pub fn render_svg(
    grid: &OccupancyGrid,
    trajectory: Option<&Trajectory>,
    opts: &RenderOptions,
) -> String {
    let px = opts.cell_px.max(1) as i64;
    let (w, h) = (grid.width() as i64, grid.height() as i64);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        w * px,
        h * px
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        w * px,
        h * px
    );
    // lower-left origin: row j is drawn at y = (h - 1 - j) * px
    let rect = |s: &mut String, c: GridCell, class: &str, fill: &str| {
        let _ = writeln!(
            s,
            r#"<rect class="{class}" x="{}" y="{}" width="{px}" height="{px}" fill="{fill}"/>"#,
            c.i as i64 * px,
            (h - 1 - c.j as i64) * px
        );
    };
    for j in 0..h {
        for i in 0..w {
            let c = GridCell::new(i as i32, j as i32);
            if grid.is_blocked(c) {
                rect(&mut s, c, "blocked", "#303030");
            }
        }
    }
    let trajectory = trajectory.filter(|t| !t.primitives.is_empty());
    if let Some(t) = trajectory {
        for &c in &t.collision_trace {
            rect(&mut s, c, "swept", "#7fb2e5");
        }
    }
    if opts.grid_lines {
        let _ = write!(s, r##"<g stroke="#c8c8c8" stroke-width="0.5">"##);
        for i in 0..=w {
            let _ = write!(
                s,
                r#"<line x1="{0}" y1="0" x2="{0}" y2="{1}"/>"#,
                i * px,
                h * px
            );
        }
        for j in 0..=h {
            let _ = write!(
                s,
                r#"<line x1="0" y1="{0}" x2="{1}" y2="{0}"/>"#,
                j * px,
                w * px
            );
        }
        let _ = writeln!(s, "</g>");
    }
    if let Some(t) = trajectory {
        let center = |c: GridCell| (c.i as i64 * px + px / 2, (h - 1 - c.j as i64) * px + px / 2);
        for p in &t.primitives {
            let points: Vec<String> = p
                .absolute_trace
                .iter()
                .map(|&c| {
                    let (x, y) = center(c);
                    format!("{x},{y}")
                })
                .collect();
            let _ = writeln!(
                s,
                r##"<polyline class="primitive" data-primitive="{}" points="{}" fill="none" stroke="#1f4e9a" stroke-width="{}"/>"##,
                p.template_id,
                points.join(" "),
                (px / 4).max(1)
            );
        }
        for (class, state, fill) in [("start", t.start, "#2e9e44"), ("goal", t.end(), "#c8332b")] {
            let (x, y) = center(state.cell());
            let _ = writeln!(
                s,
                r#"<circle class="{class}" cx="{x}" cy="{y}" r="{}" fill="{fill}"/>"#,
                (px / 3).max(1)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
