use thiserror::Error;

use crate::grid_map::GridCell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RasterizeError {
    #[error("polyline needs at least two points, found {0}")]
    TooFewPoints(usize),
    #[error("polyline point {0} is not finite")]
    NonFinite(usize),
}

const TIE_EPS: f64 = 1e-9;

/// Cells swept by a polyline given in cell units (cell `(i, j)` spans
/// `[i, i+1) x [j, j+1)`), in traversal order with consecutive duplicates
/// removed.
///
/// Each segment is walked exactly with a grid traversal. When a segment
/// crosses a cell corner exactly, the walk steps diagonally, so cells that
/// are only touched at a corner are not reported.
pub fn rasterize(polyline: &[(f64, f64)]) -> Result<Vec<GridCell>, RasterizeError> {
    if polyline.len() < 2 {
        return Err(RasterizeError::TooFewPoints(polyline.len()));
    }
    if let Some(idx) = polyline
        .iter()
        .position(|(x, y)| !x.is_finite() || !y.is_finite())
    {
        return Err(RasterizeError::NonFinite(idx));
    }
    let cell_of = |(x, y): (f64, f64)| GridCell::new(x.floor() as i32, y.floor() as i32);
    let mut out = vec![cell_of(polyline[0])];
    for seg in polyline.windows(2) {
        walk_segment(seg[0], seg[1], &mut out);
    }
    Ok(out)
}

fn walk_segment(a: (f64, f64), b: (f64, f64), out: &mut Vec<GridCell>) {
    let (x0, y0) = a;
    let (dx, dy) = (b.0 - x0, b.1 - y0);
    let mut cell = GridCell::new(x0.floor() as i32, y0.floor() as i32);
    let end = GridCell::new(b.0.floor() as i32, b.1.floor() as i32);
    let step_i = if dx > 0.0 { 1 } else { -1 };
    let step_j = if dy > 0.0 { 1 } else { -1 };
    let boundary_t = |pos: f64, c: i32, d: f64, step: i32| -> f64 {
        if d == 0.0 {
            f64::INFINITY
        } else {
            let edge = if step > 0 { (c + 1) as f64 } else { c as f64 };
            (edge - pos) / d
        }
    };
    let push = |out: &mut Vec<GridCell>, c: GridCell| {
        if out.last() != Some(&c) {
            out.push(c);
        }
    };
    push(out, cell);
    // a segment never crosses more boundaries than this; guards float drift
    let max_steps = (dx.abs().ceil() + dy.abs().ceil()) as usize + 2;
    for _ in 0..max_steps {
        if cell == end {
            break;
        }
        let tx = boundary_t(x0, cell.i, dx, step_i);
        let ty = boundary_t(y0, cell.j, dy, step_j);
        if tx.min(ty) > 1.0 + TIE_EPS {
            break;
        }
        if (tx - ty).abs() <= TIE_EPS {
            cell.i += step_i;
            cell.j += step_j;
        } else if tx < ty {
            cell.i += step_i;
        } else {
            cell.j += step_j;
        }
        push(out, cell);
    }
    push(out, end);
}
