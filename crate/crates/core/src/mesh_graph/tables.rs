//! Precomputed, translation-free tables of the mesh graph.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{direct_successors, init_conf, ConfigId, Configuration, ExtendedCell, SuccessorRecord};
use crate::control_set::{ControlSet, Heading, PrimitiveId};
use crate::grid_map::GridCell;

/// Where a member primitive of a configuration ends, seen from the cell
/// currently holding the configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimitiveEnd {
    pub end_delta: GridCell,
    pub end_heading: Heading,
    pub cost: f64,
    pub primitive: PrimitiveId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshTables {
    heading_count: u16,
    configs: Vec<Configuration>,
    /// CSR layout: successors of config `c` are
    /// `successors[succ_offsets[c]..succ_offsets[c + 1]]`.
    succ_offsets: Vec<u32>,
    successors: Vec<SuccessorRecord>,
    end_offsets: Vec<u32>,
    ends: Vec<PrimitiveEnd>,
    initial_of_heading: Vec<ConfigId>,
    heading_of_initial: Vec<Option<Heading>>,
    soft_ids: Vec<u32>,
    soft_class_count: u32,
}

impl MeshTables {
    /// Number every configuration reachable from the initial ones by a
    /// depth-first traversal (preorder, headings in index order, successors
    /// in [`direct_successors`] order), then record successors, primitive
    /// ends and soft-duplicate ids per number.
    pub fn build(cs: &ControlSet) -> Self {
        let mut numbers: HashMap<Configuration, ConfigId> = HashMap::new();
        let mut configs: Vec<Configuration> = Vec::new();
        let mut number =
            |c: &Configuration, configs: &mut Vec<Configuration>| -> Option<ConfigId> {
                if numbers.contains_key(c) {
                    return None;
                }
                let id = ConfigId(configs.len() as u32);
                numbers.insert(c.clone(), id);
                configs.push(c.clone());
                Some(id)
            };

        // explicit stack standing in for the recursive traversal
        let mut stack: Vec<(Vec<Configuration>, usize)> = Vec::new();
        for h in cs.headings() {
            let root = init_conf(h, cs);
            if number(&root, &mut configs).is_none() {
                continue;
            }
            stack.push((successor_configs(&root, cs), 0));
            while let Some((succ, pos)) = stack.last_mut() {
                if *pos == succ.len() {
                    stack.pop();
                    continue;
                }
                let next = succ[*pos].clone();
                *pos += 1;
                if number(&next, &mut configs).is_some() {
                    let children = successor_configs(&next, cs);
                    stack.push((children, 0));
                }
            }
        }
        let id_of = |c: &Configuration| {
            *numbers
                .get(c)
                .expect("successor configuration was numbered")
        };

        let mut succ_offsets = vec![0u32];
        let mut successors = Vec::new();
        let mut end_offsets = vec![0u32];
        let mut ends = Vec::new();
        let mut heading_of_initial = vec![None; configs.len()];
        for c in &configs {
            for s in direct_successors(c, cs) {
                successors.push(SuccessorRecord {
                    delta: s.delta,
                    next: id_of(&s.config),
                    cost: s.cost,
                    kind: s.kind,
                    via: s.via,
                });
            }
            succ_offsets.push(successors.len() as u32);
            let k = c.k() as usize;
            for &id in c.members() {
                let p = cs.primitive(id);
                ends.push(PrimitiveEnd {
                    end_delta: p.end_offset - p.trace[k - 1],
                    end_heading: p.end_heading,
                    cost: p.cost,
                    primitive: id,
                });
            }
            end_offsets.push(ends.len() as u32);
        }
        let initial_of_heading: Vec<ConfigId> =
            cs.headings().map(|h| id_of(&init_conf(h, cs))).collect();
        for (h, id) in initial_of_heading.iter().enumerate() {
            heading_of_initial[id.index()] = Some(Heading(h as u16));
        }

        let mut tables = MeshTables {
            heading_count: cs.heading_count,
            configs,
            succ_offsets,
            successors,
            end_offsets,
            ends,
            initial_of_heading,
            heading_of_initial,
            soft_ids: Vec::new(),
            soft_class_count: 0,
        };
        tables.assign_soft_ids();
        tables
    }

    fn assign_soft_ids(&mut self) {
        let mut classes: HashMap<Vec<GridCell>, u32> = HashMap::new();
        let mut ids = Vec::with_capacity(self.configs.len());
        for c in 0..self.configs.len() {
            let set: Vec<GridCell> = self
                .reachable_projection_set(ConfigId(c as u32))
                .into_iter()
                .collect();
            let next = classes.len() as u32;
            ids.push(*classes.entry(set).or_insert(next));
        }
        self.soft_class_count = classes.len() as u32;
        self.soft_ids = ids;
    }

    pub fn config_count(&self) -> usize {
        self.configs.len()
    }

    pub fn heading_count(&self) -> u16 {
        self.heading_count
    }

    pub fn configuration(&self, id: ConfigId) -> &Configuration {
        &self.configs[id.index()]
    }

    pub fn configurations(&self) -> &[Configuration] {
        &self.configs
    }

    pub fn config_ids(&self) -> impl Iterator<Item = ConfigId> {
        (0..self.configs.len() as u32).map(ConfigId)
    }

    /// Number of a configuration, if it is reachable.
    pub fn lookup(&self, config: &Configuration) -> Option<ConfigId> {
        self.configs
            .iter()
            .position(|c| c == config)
            .map(|i| ConfigId(i as u32))
    }

    #[inline]
    pub fn records(&self, id: ConfigId) -> &[SuccessorRecord] {
        let c = id.index();
        &self.successors[self.succ_offsets[c] as usize..self.succ_offsets[c + 1] as usize]
    }

    #[inline]
    pub fn primitive_ends(&self, id: ConfigId) -> &[PrimitiveEnd] {
        let c = id.index();
        &self.ends[self.end_offsets[c] as usize..self.end_offsets[c + 1] as usize]
    }

    pub fn initial_of(&self, heading: Heading) -> ConfigId {
        self.initial_of_heading[heading.index()]
    }

    /// Heading whose initial configuration this is; `None` for non-initial.
    #[inline]
    pub fn heading_of_initial(&self, id: ConfigId) -> Option<Heading> {
        self.heading_of_initial[id.index()]
    }

    pub fn is_initial(&self, id: ConfigId) -> bool {
        self.heading_of_initial(id).is_some()
    }

    /// Table-driven successors of an extended cell.
    pub fn successors(
        &self,
        u: ExtendedCell,
    ) -> impl Iterator<Item = (ExtendedCell, &SuccessorRecord)> + '_ {
        let origin = u.cell();
        self.records(u.config)
            .iter()
            .map(move |r| (ExtendedCell::new(origin + r.delta, r.next), r))
    }

    /// Projections (relative to the vertex) of everything reachable from
    /// `(0, 0, id)` over paths of at most two edges, the vertex included.
    pub fn reachable_projection_set(&self, id: ConfigId) -> BTreeSet<GridCell> {
        let mut out = BTreeSet::from([GridCell::ORIGIN]);
        for r1 in self.records(id) {
            out.insert(r1.delta);
            for r2 in self.records(r1.next) {
                out.insert(r1.delta + r2.delta);
            }
        }
        out
    }

    /// Soft-duplicate class: equal ids iff equal reachable projection sets.
    #[inline]
    pub fn soft_id(&self, id: ConfigId) -> u32 {
        self.soft_ids[id.index()]
    }

    pub fn soft_class_count(&self) -> usize {
        self.soft_class_count as usize
    }
}

fn successor_configs(c: &Configuration, cs: &ControlSet) -> Vec<Configuration> {
    direct_successors(c, cs)
        .into_iter()
        .map(|s| s.config)
        .collect()
}
