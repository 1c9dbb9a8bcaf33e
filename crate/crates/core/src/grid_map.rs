//! Occupancy grids and the MovingAI `.map` / `.scen` benchmark formats.
//!
//! Coordinates are `(i, j)` = (column, row) with the origin at the lower-left
//! corner of the map. MovingAI stores rows top-down, so body line `r`
//! (0-based, counted from the top) holds row `j = height - 1 - r`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A grid cell or a relative offset between cells.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct GridCell {
    pub i: i32,
    pub j: i32,
}

impl GridCell {
    pub const ORIGIN: GridCell = GridCell { i: 0, j: 0 };

    pub const fn new(i: i32, j: i32) -> Self {
        Self { i, j }
    }
}

impl From<[i32; 2]> for GridCell {
    fn from([i, j]: [i32; 2]) -> Self {
        Self { i, j }
    }
}

impl From<GridCell> for [i32; 2] {
    fn from(c: GridCell) -> Self {
        [c.i, c.j]
    }
}

impl Add for GridCell {
    type Output = GridCell;
    fn add(self, rhs: GridCell) -> GridCell {
        GridCell::new(self.i + rhs.i, self.j + rhs.j)
    }
}

impl Sub for GridCell {
    type Output = GridCell;
    fn sub(self, rhs: GridCell) -> GridCell {
        GridCell::new(self.i - rhs.i, self.j - rhs.j)
    }
}

impl Neg for GridCell {
    type Output = GridCell;
    fn neg(self) -> GridCell {
        GridCell::new(-self.i, -self.j)
    }
}

impl fmt::Display for GridCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MapError {
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("line {line}: expected {expected} columns, found {found}")]
    RowWidth {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: expected {expected} map rows, found {found}")]
    RowCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: unknown cell character {ch:?}")]
    UnknownChar {
        line: usize,
        column: usize,
        ch: char,
    },
}

#[derive(Debug, Error, PartialEq)]
pub enum ScenarioError {
    #[error("line 1: missing `version` line")]
    MissingVersion,
    #[error("line {line}: expected 9 tab-separated columns, found {found}")]
    ColumnCount { line: usize, found: usize },
    #[error("line {line}: invalid {field}: {value:?}")]
    Field {
        line: usize,
        field: &'static str,
        value: String,
    },
    #[error("entry {index}: {cell} outside {width}x{height} map")]
    OutOfBounds {
        index: usize,
        cell: GridCell,
        width: usize,
        height: usize,
    },
    #[error("entry {index}: map dimensions {found_w}x{found_h} do not match {width}x{height}")]
    MapMismatch {
        index: usize,
        found_w: usize,
        found_h: usize,
        width: usize,
        height: usize,
    },
}

/// Immutable occupancy grid.
///
/// Keeps the original map characters so that writing the body back out
/// reproduces the input byte for byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancyGrid {
    width: usize,
    height: usize,
    /// Row-major, `j = 0` first.
    blocked: Vec<bool>,
    tiles: Vec<u8>,
}

fn tile_blocked(ch: u8) -> Option<bool> {
    match ch {
        b'.' | b'G' | b'S' => Some(false),
        b'@' | b'O' | b'T' | b'W' => Some(true),
        _ => None,
    }
}

impl OccupancyGrid {
    /// Build from a row-major blocked mask with `j = 0` at index 0.
    ///
    /// Panics if `blocked.len() != width * height` or a dimension is zero.
    pub fn from_blocked(width: usize, height: usize, blocked: Vec<bool>) -> Self {
        assert!(width > 0 && height > 0, "grid dimensions must be positive");
        assert_eq!(blocked.len(), width * height, "mask size mismatch");
        let tiles = blocked
            .iter()
            .map(|&b| if b { b'@' } else { b'.' })
            .collect();
        Self {
            width,
            height,
            blocked,
            tiles,
        }
    }

    pub fn empty(width: usize, height: usize) -> Self {
        Self::from_blocked(width, height, vec![false; width * height])
    }

    /// Copy of this grid with the listed in-bounds cells marked blocked.
    pub fn with_blocked(&self, cells: &[GridCell]) -> Self {
        let mut out = self.clone();
        for &c in cells {
            if let Some(idx) = out.index(c) {
                out.blocked[idx] = true;
                out.tiles[idx] = b'@';
            }
        }
        out
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn in_bounds(&self, cell: GridCell) -> bool {
        cell.i >= 0
            && cell.j >= 0
            && (cell.i as usize) < self.width
            && (cell.j as usize) < self.height
    }

    fn index(&self, cell: GridCell) -> Option<usize> {
        self.in_bounds(cell)
            .then(|| cell.j as usize * self.width + cell.i as usize)
    }

    /// True when the cell is outside the map or marked as an obstacle.
    ///
    /// One call is one collision check in the planners' metrics.
    #[inline]
    pub fn is_blocked(&self, cell: GridCell) -> bool {
        match self.index(cell) {
            Some(idx) => self.blocked[idx],
            None => true,
        }
    }

    pub fn free_count(&self) -> usize {
        self.blocked.iter().filter(|b| !**b).count()
    }

    pub fn free_cells(&self) -> impl Iterator<Item = GridCell> + '_ {
        (0..self.height).flat_map(move |j| {
            (0..self.width).filter_map(move |i| {
                let c = GridCell::new(i as i32, j as i32);
                (!self.is_blocked(c)).then_some(c)
            })
        })
    }

    /// Parse a MovingAI map file.
    pub fn parse_map(text: &str) -> Result<Self, MapError> {
        let lines: Vec<&str> = text.lines().collect();
        let header = |idx: usize, key: &str| -> Result<&str, MapError> {
            let line =
                lines
                    .get(idx)
                    .map(|l| l.trim_end_matches('\r'))
                    .ok_or(MapError::Header {
                        line: idx + 1,
                        reason: format!("expected `{key}` line, found end of file"),
                    })?;
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some(k) if k == key => Ok(parts.next().unwrap_or("")),
                _ => Err(MapError::Header {
                    line: idx + 1,
                    reason: format!("expected `{key}`, found {line:?}"),
                }),
            }
        };
        let dim = |idx: usize, key: &str| -> Result<usize, MapError> {
            let raw = header(idx, key)?;
            match raw.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(MapError::Header {
                    line: idx + 1,
                    reason: format!("invalid {key} {raw:?}"),
                }),
            }
        };
        header(0, "type")?;
        let height = dim(1, "height")?;
        let width = dim(2, "width")?;
        header(3, "map")?;

        let body: Vec<&str> = lines[4..]
            .iter()
            .map(|l| l.trim_end_matches('\r'))
            .collect();
        // tolerate trailing blank lines only
        let mut rows = body.len();
        while rows > height && body[rows - 1].is_empty() {
            rows -= 1;
        }
        if rows != height {
            return Err(MapError::RowCount {
                line: 4 + rows.min(height) + 1,
                expected: height,
                found: rows,
            });
        }

        let mut blocked = vec![false; width * height];
        let mut tiles = vec![b'.'; width * height];
        for (r, row) in body[..height].iter().enumerate() {
            let line = r + 5;
            let bytes = row.as_bytes();
            if bytes.len() != width {
                return Err(MapError::RowWidth {
                    line,
                    expected: width,
                    found: bytes.len(),
                });
            }
            let j = height - 1 - r;
            for (i, &ch) in bytes.iter().enumerate() {
                let b = tile_blocked(ch).ok_or(MapError::UnknownChar {
                    line,
                    column: i + 1,
                    ch: ch as char,
                })?;
                blocked[j * width + i] = b;
                tiles[j * width + i] = ch;
            }
        }
        Ok(Self {
            width,
            height,
            blocked,
            tiles,
        })
    }

    /// The `H` body lines, top row first, each newline-terminated.
    pub fn body_string(&self) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for j in (0..self.height).rev() {
            let row = &self.tiles[j * self.width..(j + 1) * self.width];
            out.push_str(std::str::from_utf8(row).expect("tiles are ascii"));
            out.push('\n');
        }
        out
    }

    pub fn to_map_string(&self) -> String {
        format!(
            "type octile\nheight {}\nwidth {}\nmap\n{}",
            self.height,
            self.width,
            self.body_string()
        )
    }
}

/// One start/goal pair from a scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioEntry {
    pub bucket: u32,
    pub map_name: String,
    pub map_width: usize,
    pub map_height: usize,
    pub start_cell: GridCell,
    pub goal_cell: GridCell,
    /// 8-connected optimal length from the benchmark; informational.
    pub reference_length: f64,
}

/// Parse a MovingAI scenario file.
///
/// Scenario coordinates are `(x, y)` with `y` counted from the top of the map;
/// they are converted to lower-left cells here, so each row needs its own
/// height column.
pub fn parse_scen(text: &str) -> Result<Vec<ScenarioEntry>, ScenarioError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, l)) if l.trim_start().starts_with("version") => {}
        _ => return Err(ScenarioError::MissingVersion),
    }
    let mut out = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = raw.split('\t').collect();
        if cols.len() != 9 {
            return Err(ScenarioError::ColumnCount {
                line,
                found: cols.len(),
            });
        }
        let int = |k: usize, field: &'static str| -> Result<i64, ScenarioError> {
            cols[k]
                .trim()
                .parse::<i64>()
                .map_err(|_| ScenarioError::Field {
                    line,
                    field,
                    value: cols[k].to_string(),
                })
        };
        let bucket = int(0, "bucket")?;
        let width = int(2, "width")?;
        let height = int(3, "height")?;
        let (sx, sy, gx, gy) = (int(4, "sx")?, int(5, "sy")?, int(6, "gx")?, int(7, "gy")?);
        let reference_length = cols[8]
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| *v >= 0.0)
            .ok_or_else(|| ScenarioError::Field {
                line,
                field: "optimal_length",
                value: cols[8].to_string(),
            })?;
        if bucket < 0 || width <= 0 || height <= 0 {
            return Err(ScenarioError::Field {
                line,
                field: "dimensions",
                value: raw.to_string(),
            });
        }
        let flip = |x: i64, y: i64| GridCell::new(x as i32, (height - 1 - y) as i32);
        out.push(ScenarioEntry {
            bucket: bucket as u32,
            map_name: cols[1].to_string(),
            map_width: width as usize,
            map_height: height as usize,
            start_cell: flip(sx, sy),
            goal_cell: flip(gx, gy),
            reference_length,
        });
    }
    Ok(out)
}

/// Check that every entry fits the given map.
pub fn validate_scenarios(
    entries: &[ScenarioEntry],
    grid: &OccupancyGrid,
) -> Result<(), ScenarioError> {
    for (index, e) in entries.iter().enumerate() {
        if e.map_width != grid.width() || e.map_height != grid.height() {
            return Err(ScenarioError::MapMismatch {
                index,
                found_w: e.map_width,
                found_h: e.map_height,
                width: grid.width(),
                height: grid.height(),
            });
        }
        for cell in [e.start_cell, e.goal_cell] {
            if !grid.in_bounds(cell) {
                return Err(ScenarioError::OutOfBounds {
                    index,
                    cell,
                    width: grid.width(),
                    height: grid.height(),
                });
            }
        }
    }
    Ok(())
}

/// Serialize entries back to the scenario format (inverse of [`parse_scen`]).
pub fn scen_to_string(entries: &[ScenarioEntry]) -> String {
    let mut out = String::from("version 1\n");
    for e in entries {
        let y = |c: GridCell| e.map_height as i32 - 1 - c.j;
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.8}\n",
            e.bucket,
            e.map_name,
            e.map_width,
            e.map_height,
            e.start_cell.i,
            y(e.start_cell),
            e.goal_cell.i,
            y(e.goal_cell),
            e.reference_length
        ));
    }
    out
}
