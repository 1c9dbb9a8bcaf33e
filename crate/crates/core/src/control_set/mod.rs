//! Motion-primitive templates and control sets.
//!
//! Trace positions are stored 0-based. Wherever an index crosses into the
//! mesh-graph code the 1-based position `k` used there is `index + 1`.

mod generate;
mod rasterize;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid_map::GridCell;
use crate::lattice::DiscreteState;

pub use generate::{generate_arcs, lattice_directions, ArcGenerator, GenerateError};
pub use rasterize::{rasterize, RasterizeError};

/// Index into the discrete heading set of a control set.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Heading(pub u16);

impl Heading {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Heading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type PrimitiveId = u32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionPrimitive {
    pub id: PrimitiveId,
    pub start_heading: Heading,
    pub end_heading: Heading,
    pub end_offset: GridCell,
    /// Swept cells relative to the start cell, in traversal order.
    pub trace: Vec<GridCell>,
    pub cost: f64,
}

impl MotionPrimitive {
    /// Number of cells in the collision trace.
    pub fn trace_len(&self) -> usize {
        self.trace.len()
    }

    /// Displacement from trace cell `index` to `index + 1` (0-based).
    ///
    /// Panics unless `index + 1 < trace_len()`.
    pub fn step(&self, index: usize) -> GridCell {
        assert!(
            index + 1 < self.trace.len(),
            "step index {index} out of range for primitive {} with {} trace cells",
            self.id,
            self.trace.len()
        );
        self.trace[index + 1] - self.trace[index]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlSet {
    pub heading_count: u16,
    #[serde(default)]
    pub headings_degrees: Vec<f64>,
    pub primitives: Vec<MotionPrimitive>,
}

/// A single broken invariant, tagged with the offending primitive(s).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Violation {
    #[error("heading_count must be positive")]
    NoHeadings,
    #[error("headings_degrees has {found} entries, expected 0 or {expected}")]
    HeadingTable { expected: usize, found: usize },
    #[error("primitives[{index}].id: expected {index}, found {id}")]
    IdOrder { index: usize, id: PrimitiveId },
    #[error("primitive {id}: {field} {heading} not below heading_count {count}")]
    HeadingRange {
        id: PrimitiveId,
        field: &'static str,
        heading: Heading,
        count: u16,
    },
    #[error("primitive {id}: trace must have at least 2 cells, found {len}")]
    TraceTooShort { id: PrimitiveId, len: usize },
    #[error("primitive {id}: trace must start at (0,0)")]
    TraceStart { id: PrimitiveId },
    #[error("primitive {id}: trace must end at end_offset {end_offset}")]
    TraceEnd {
        id: PrimitiveId,
        end_offset: GridCell,
    },
    #[error("primitive {id}: trace cells {position} and {} coincide", position + 1)]
    RepeatedCell { id: PrimitiveId, position: usize },
    #[error("primitive {id}: cost must be finite and positive, found {cost}")]
    Cost { id: PrimitiveId, cost: f64 },
    #[error("primitives {first} and {second} share start heading, end offset and end heading")]
    Duplicate {
        first: PrimitiveId,
        second: PrimitiveId,
    },
}

#[derive(Debug, Error)]
pub enum ControlSetError {
    #[error("control-set file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid control set: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

impl ControlSet {
    /// Every invariant violation; empty when the set is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = self.heading_count;
        if k == 0 {
            out.push(Violation::NoHeadings);
        }
        if !self.headings_degrees.is_empty() && self.headings_degrees.len() != k as usize {
            out.push(Violation::HeadingTable {
                expected: k as usize,
                found: self.headings_degrees.len(),
            });
        }
        let mut seen: HashMap<(Heading, GridCell, Heading), PrimitiveId> = HashMap::new();
        for (index, p) in self.primitives.iter().enumerate() {
            let id = p.id;
            if id as usize != index {
                out.push(Violation::IdOrder { index, id });
            }
            for (field, heading) in [
                ("start_heading", p.start_heading),
                ("end_heading", p.end_heading),
            ] {
                if heading.0 >= k {
                    out.push(Violation::HeadingRange {
                        id,
                        field,
                        heading,
                        count: k,
                    });
                }
            }
            if p.trace.len() < 2 {
                out.push(Violation::TraceTooShort {
                    id,
                    len: p.trace.len(),
                });
            }
            if p.trace.first() != Some(&GridCell::ORIGIN) {
                out.push(Violation::TraceStart { id });
            }
            if p.trace.last() != Some(&p.end_offset) {
                out.push(Violation::TraceEnd {
                    id,
                    end_offset: p.end_offset,
                });
            }
            for (position, w) in p.trace.windows(2).enumerate() {
                if w[0] == w[1] {
                    out.push(Violation::RepeatedCell { id, position });
                }
            }
            if !(p.cost.is_finite() && p.cost > 0.0) {
                out.push(Violation::Cost { id, cost: p.cost });
            }
            if let Some(&first) = seen.get(&(p.start_heading, p.end_offset, p.end_heading)) {
                out.push(Violation::Duplicate { first, second: id });
            } else {
                seen.insert((p.start_heading, p.end_offset, p.end_heading), id);
            }
        }
        out
    }

    /// Parse and validate a control-set JSON document.
    pub fn load(text: &str) -> Result<Self, ControlSetError> {
        let cs: ControlSet = serde_json::from_str(text)?;
        let violations = cs.validate();
        if violations.is_empty() {
            Ok(cs)
        } else {
            Err(ControlSetError::Invalid(violations))
        }
    }

    /// Pretty JSON. Costs are written with the shortest representation that
    /// round-trips exactly.
    pub fn save(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("control set serializes");
        s.push('\n');
        s
    }

    pub fn primitive(&self, id: PrimitiveId) -> &MotionPrimitive {
        &self.primitives[id as usize]
    }

    /// Primitives leaving the given heading, in id order.
    pub fn starting_at(&self, heading: Heading) -> impl Iterator<Item = &MotionPrimitive> + '_ {
        self.primitives
            .iter()
            .filter(move |p| p.start_heading == heading)
    }

    pub fn headings(&self) -> impl Iterator<Item = Heading> {
        (0..self.heading_count).map(Heading)
    }

    /// Heading angle in radians, if the file carries the angle table.
    pub fn heading_radians(&self, h: Heading) -> Option<f64> {
        self.headings_degrees.get(h.index()).map(|d| d.to_radians())
    }
}

/// A template placed at a concrete discrete state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimitiveInstance {
    pub template_id: PrimitiveId,
    pub start_state: DiscreteState,
    pub end_state: DiscreteState,
    pub absolute_trace: Vec<GridCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("primitive {id} starts at heading {expected}, cannot be applied at heading {found}")]
pub struct HeadingMismatch {
    pub id: PrimitiveId,
    pub expected: Heading,
    pub found: Heading,
}

/// Translate a template so that it starts at `at`.
pub fn instantiate(
    prim: &MotionPrimitive,
    at: DiscreteState,
) -> Result<PrimitiveInstance, HeadingMismatch> {
    if prim.start_heading != at.heading {
        return Err(HeadingMismatch {
            id: prim.id,
            expected: prim.start_heading,
            found: at.heading,
        });
    }
    let origin = at.cell();
    Ok(PrimitiveInstance {
        template_id: prim.id,
        start_state: at,
        end_state: DiscreteState::at(origin + prim.end_offset, prim.end_heading),
        absolute_trace: prim.trace.iter().map(|&c| c + origin).collect(),
    })
}

/// Two headings (E, N) and four primitives: straight moves of two cells and
/// the two quarter turns. The smallest set that exercises straights, turns
/// and both successor cases of the mesh graph.
pub fn toy2() -> ControlSet {
    let c = GridCell::new;
    let prim = |id, s, e, trace: Vec<GridCell>, cost| MotionPrimitive {
        id,
        start_heading: Heading(s),
        end_heading: Heading(e),
        end_offset: *trace.last().unwrap(),
        trace,
        cost,
    };
    ControlSet {
        heading_count: 2,
        headings_degrees: vec![0.0, 90.0],
        primitives: vec![
            prim(0, 0, 0, vec![c(0, 0), c(1, 0), c(2, 0)], 2.0),
            prim(1, 0, 1, vec![c(0, 0), c(1, 0), c(1, 1)], 2.2),
            prim(2, 1, 1, vec![c(0, 0), c(0, 1), c(0, 2)], 2.0),
            prim(3, 1, 0, vec![c(0, 0), c(0, 1), c(1, 1)], 2.2),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const E: Heading = Heading(0);
    pub(crate) const N: Heading = Heading(1);

    #[test]
    fn toy2_is_valid() {
        assert_eq!(toy2().validate(), vec![]);
    }

    #[test]
    fn duplicate_triple_reported() {
        let mut cs = toy2();
        let mut dup = cs.primitives[0].clone();
        dup.id = 4;
        dup.cost = 3.0;
        cs.primitives.push(dup);
        assert_eq!(
            cs.validate(),
            vec![Violation::Duplicate {
                first: 0,
                second: 4
            }]
        );
    }

    #[test]
    fn trace_must_start_at_origin() {
        let mut cs = toy2();
        cs.primitives[1].trace[0] = GridCell::new(1, 0);
        cs.primitives[1].trace[1] = GridCell::new(2, 0);
        let v = cs.validate();
        assert!(v.contains(&Violation::TraceStart { id: 1 }), "{v:?}");
        assert_eq!(v[0].to_string(), "primitive 1: trace must start at (0,0)");
    }

    #[test]
    fn other_violations() {
        let mut cs = toy2();
        cs.primitives[2].trace = vec![GridCell::new(0, 0)];
        cs.primitives[2].end_offset = GridCell::new(0, 0);
        cs.primitives[3].trace.insert(1, GridCell::new(0, 0));
        cs.primitives[0].cost = 0.0;
        let v = cs.validate();
        assert!(v.contains(&Violation::TraceTooShort { id: 2, len: 1 }));
        assert!(v.contains(&Violation::RepeatedCell { id: 3, position: 0 }));
        assert!(v.contains(&Violation::Cost { id: 0, cost: 0.0 }));
    }

    #[test]
    fn save_load_roundtrip() {
        let cs = toy2();
        let text = cs.save();
        assert_eq!(ControlSet::load(&text).unwrap(), cs);
        assert!(text.contains("\"end_offset\": [\n        2,\n        0\n      ]"));
    }

    #[test]
    fn load_rejects_negative_cost_and_bad_heading() {
        let text = toy2().save().replacen("\"cost\": 2.0", "\"cost\": -2.0", 1);
        assert!(
            matches!(ControlSet::load(&text), Err(ControlSetError::Invalid(v)) if v == vec![Violation::Cost { id: 0, cost: -2.0 }])
        );

        let mut cs = toy2();
        cs.primitives[3].end_heading = Heading(2);
        let err = ControlSet::load(&cs.save()).unwrap_err();
        assert!(
            err.to_string()
                .contains("end_heading 2 not below heading_count 2"),
            "{err}"
        );

        assert!(matches!(
            ControlSet::load("{\"heading_count\": 2}"),
            Err(ControlSetError::Json(_))
        ));
    }

    #[test]
    fn instantiate_shifts_trace() {
        let cs = toy2();
        let inst = instantiate(cs.primitive(0), DiscreteState::new(5, 5, E)).unwrap();
        assert_eq!(inst.end_state, DiscreteState::new(7, 5, E));
        assert_eq!(
            inst.absolute_trace,
            vec![
                GridCell::new(5, 5),
                GridCell::new(6, 5),
                GridCell::new(7, 5)
            ]
        );

        let at_origin = instantiate(cs.primitive(1), DiscreteState::new(0, 0, E)).unwrap();
        assert_eq!(at_origin.absolute_trace, cs.primitive(1).trace);

        assert_eq!(
            instantiate(cs.primitive(1), DiscreteState::new(0, 0, N)),
            Err(HeadingMismatch {
                id: 1,
                expected: E,
                found: N
            })
        );
    }

    #[test]
    fn step_along_primitive() {
        let cs = toy2();
        // 1-based positions k=1 and k=2 are indices 0 and 1 here
        assert_eq!(cs.primitive(0).step(0), GridCell::new(1, 0));
        assert_eq!(cs.primitive(1).step(1), GridCell::new(0, 1));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn step_past_end_panics() {
        toy2().primitive(0).step(2);
    }
}
