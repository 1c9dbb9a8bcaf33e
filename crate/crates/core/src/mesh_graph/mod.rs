//! The mesh graph: extended cells `(i, j, configuration)` where a
//! configuration is the bundle of primitives passing through the cell, all at
//! the same 1-based trace position `k`.
//!
//! [`direct_successors`] is the literal successor procedure over explicit
//! configurations. Planners use [`MeshTables`], which numbers every
//! configuration reachable from an initial one and stores successors as
//! translation-free deltas.

mod cache;
mod tables;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::control_set::{ControlSet, Heading, MotionPrimitive, PrimitiveId};
use crate::grid_map::GridCell;

pub use cache::{
    control_set_hash, load_or_build, read_cache, write_cache, CacheError, CacheStatus,
    CACHE_VERSION,
};
pub use tables::{MeshTables, PrimitiveEnd};

/// Canonical configuration of primitives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Configuration {
    /// Sorted, duplicate-free member ids, all at 1-based trace position `k`
    /// with `k < U` for every member.
    Bundle { k: u16, members: Vec<PrimitiveId> },
    /// Initial configuration of a heading with no outgoing primitives. Kept
    /// per heading so goal identity still distinguishes headings.
    Empty(Heading),
}

impl Configuration {
    pub fn is_initial(&self) -> bool {
        match self {
            Configuration::Bundle { k, .. } => *k == 1,
            Configuration::Empty(_) => true,
        }
    }

    pub fn members(&self) -> &[PrimitiveId] {
        match self {
            Configuration::Bundle { members, .. } => members,
            Configuration::Empty(_) => &[],
        }
    }

    /// 1-based trace position shared by the members (1 for empty markers).
    pub fn k(&self) -> u16 {
        match self {
            Configuration::Bundle { k, .. } => *k,
            Configuration::Empty(_) => 1,
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Configuration::Bundle { k, members } => write!(f, "{{k={k}, {members:?}}}"),
            Configuration::Empty(h) => write!(f, "{{empty@{h}}}"),
        }
    }
}

/// Dense number of a reachable configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConfigId(pub u32);

impl ConfigId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Mesh-graph vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedCell {
    pub i: i32,
    pub j: i32,
    pub config: ConfigId,
}

impl ExtendedCell {
    pub const fn new(cell: GridCell, config: ConfigId) -> Self {
        Self {
            i: cell.i,
            j: cell.j,
            config,
        }
    }

    pub const fn cell(&self) -> GridCell {
        GridCell::new(self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuccessorKind {
    Initial,
    NonInitial,
}

/// One outgoing edge of a numbered configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuccessorRecord {
    pub delta: GridCell,
    pub next: ConfigId,
    pub cost: f64,
    pub kind: SuccessorKind,
    /// The primitive that completes on this edge; set iff `kind` is initial.
    pub via: Option<PrimitiveId>,
}

/// A successor produced by [`direct_successors`] over explicit configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectSuccessor {
    pub delta: GridCell,
    pub config: Configuration,
    pub cost: f64,
    pub kind: SuccessorKind,
    pub via: Option<PrimitiveId>,
}

/// Initial configuration of `heading`: every primitive leaving it, at `k = 1`.
pub fn init_conf(heading: Heading, cs: &ControlSet) -> Configuration {
    let members: Vec<PrimitiveId> = cs.starting_at(heading).map(|p| p.id).collect();
    if members.is_empty() {
        Configuration::Empty(heading)
    } else {
        Configuration::Bundle { k: 1, members }
    }
}

/// Step along `prim` from its `k`-th to its `(k+1)`-th trace cell (`k` is
/// 1-based). Panics unless `1 <= k < U`.
pub fn step_delta(prim: &MotionPrimitive, k: u16) -> GridCell {
    assert!(k >= 1, "trace position k is 1-based, found 0");
    prim.step(k as usize - 1)
}

/// Successors of an extended cell sitting at the origin.
///
/// Members whose next step is their last produce an initial successor (the
/// end heading's initial configuration, cost of the primitive). The rest are
/// grouped by their next step into non-initial successors at `k + 1` with
/// cost 0. Members are visited in id order and groups are emitted in the
/// order their step was first seen.
pub fn direct_successors(config: &Configuration, cs: &ControlSet) -> Vec<DirectSuccessor> {
    let Configuration::Bundle { k, members } = config else {
        return Vec::new();
    };
    let k = *k;
    let mut out = Vec::new();
    let mut groups: Vec<(GridCell, Vec<PrimitiveId>)> = Vec::new();
    for &id in members {
        let prim = cs.primitive(id);
        let delta = step_delta(prim, k);
        if k as usize == prim.trace_len() - 1 {
            out.push(DirectSuccessor {
                delta,
                config: init_conf(prim.end_heading, cs),
                cost: prim.cost,
                kind: SuccessorKind::Initial,
                via: Some(id),
            });
        } else if let Some((_, group)) = groups.iter_mut().find(|(d, _)| *d == delta) {
            group.push(id);
        } else {
            groups.push((delta, vec![id]));
        }
    }
    for (delta, members) in groups {
        out.push(DirectSuccessor {
            delta,
            config: Configuration::Bundle { k: k + 1, members },
            cost: 0.0,
            kind: SuccessorKind::NonInitial,
            via: None,
        });
    }
    out
}

/// [`direct_successors`] placed at an absolute cell.
pub fn get_successors(
    cell: GridCell,
    config: &Configuration,
    cs: &ControlSet,
) -> Vec<(GridCell, DirectSuccessor)> {
    direct_successors(config, cs)
        .into_iter()
        .map(|s| (cell + s.delta, s))
        .collect()
}
