//! Benchmark sweeps: scenario pairs × seeded heading pairs × planners ×
//! weights, one CSV row each, plus paired-median summaries.

pub mod synth;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::control_set::{ControlSet, ControlSetError, Heading};
use crate::grid_map::{
    parse_scen, validate_scenarios, MapError, OccupancyGrid, ScenarioEntry, ScenarioError,
};
use crate::lattice::DiscreteState;
use crate::mesh_graph::{load_or_build, CacheError, MeshTables};
use crate::search::{dijkstra_oracle, Algorithm, PlanRequest, DEFAULT_INTERLEAVE};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Config {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("invalid bench config: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Map { path: PathBuf, source: MapError },
    #[error("{path}: {source}")]
    Scenario {
        path: PathBuf,
        source: ScenarioError,
    },
    #[error("{path}: {source}")]
    ControlSet {
        path: PathBuf,
        source: ControlSetError,
    },
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

fn default_headings_per_pair() -> u32 {
    3
}

fn default_interleave() -> u32 {
    DEFAULT_INTERLEAVE
}

fn default_jobs() -> usize {
    1
}

/// Bench configuration file. Relative paths are taken relative to the file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub maps: Vec<PathBuf>,
    /// One scenario file per map, in the same order.
    pub scenarios: Vec<PathBuf>,
    pub control_set: PathBuf,
    #[serde(default)]
    pub cache: Option<PathBuf>,
    pub algorithms: Vec<Algorithm>,
    pub weights: Vec<f64>,
    #[serde(default = "default_headings_per_pair")]
    pub headings_per_pair: u32,
    #[serde(default)]
    pub seed: u64,
    /// Pruning steps per lattice step for `mesh_parall`.
    #[serde(default = "default_interleave")]
    pub interleave: u32,
    /// Use only the first pairs of each scenario file.
    #[serde(default)]
    pub max_pairs: Option<usize>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
}

impl BenchConfig {
    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = fs::read_to_string(path).map_err(|source| BenchError::Io {
            path: path.into(),
            source,
        })?;
        let mut cfg: BenchConfig =
            serde_json::from_str(&text).map_err(|source| BenchError::Config {
                path: path.into(),
                source,
            })?;
        if let Some(dir) = path.parent() {
            cfg.resolve_paths(dir);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn resolve_paths(&mut self, dir: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        self.maps.iter_mut().for_each(fix);
        self.scenarios.iter_mut().for_each(fix);
        fix(&mut self.control_set);
        self.cache.iter_mut().for_each(fix);
        self.output.iter_mut().for_each(fix);
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |m: String| Err(BenchError::Invalid(m));
        if self.maps.is_empty() || self.maps.len() != self.scenarios.len() {
            return bad(format!(
                "{} maps but {} scenario files",
                self.maps.len(),
                self.scenarios.len()
            ));
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms".into());
        }
        if self.weights.is_empty() {
            return bad("weights must be nonempty".into());
        }
        if let Some(w) = self.weights.iter().find(|w| !(w.is_finite() && **w >= 1.0)) {
            return bad(format!("weight {w} is below 1"));
        }
        if self.headings_per_pair == 0 {
            return bad("headings_per_pair must be at least 1".into());
        }
        if self.interleave == 0 {
            return bad("interleave must be positive".into());
        }
        if self.jobs == 0 {
            return bad("jobs must be positive".into());
        }
        Ok(())
    }
}

/// One planning query of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BenchInstance {
    pub map: String,
    pub scen_index: usize,
    pub start: DiscreteState,
    pub goal: DiscreteState,
}

/// `per_pair` instances per scenario entry, headings drawn uniformly from
/// `rng` in entry order.
pub fn make_instances(
    map: &str,
    entries: &[ScenarioEntry],
    heading_count: u16,
    per_pair: u32,
    rng: &mut impl Rng,
) -> Vec<BenchInstance> {
    let mut out = Vec::with_capacity(entries.len() * per_pair as usize);
    for (scen_index, e) in entries.iter().enumerate() {
        for _ in 0..per_pair {
            let sh = Heading(rng.gen_range(0..heading_count));
            let gh = Heading(rng.gen_range(0..heading_count));
            out.push(BenchInstance {
                map: map.to_string(),
                scen_index,
                start: DiscreteState::at(e.start_cell, sh),
                goal: DiscreteState::at(e.goal_cell, gh),
            });
        }
    }
    out
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub map: String,
    pub scen_index: usize,
    pub si: i32,
    pub sj: i32,
    #[serde(rename = "sθ")]
    pub s_heading: u16,
    pub gi: i32,
    pub gj: i32,
    #[serde(rename = "gθ")]
    pub g_heading: u16,
    pub algo: Algorithm,
    pub w: f64,
    pub solved: bool,
    pub cost: Option<f64>,
    pub oracle_cost: Option<f64>,
    pub cost_ratio: Option<f64>,
    pub expansions: u64,
    pub generated: u64,
    pub collision_checks: u64,
    pub runtime_us: u64,
}

/// Fixed CSV column order.
pub const CSV_COLUMNS: [&str; 18] = [
    "map",
    "scen_index",
    "si",
    "sj",
    "sθ",
    "gi",
    "gj",
    "gθ",
    "algo",
    "w",
    "solved",
    "cost",
    "oracle_cost",
    "cost_ratio",
    "expansions",
    "generated",
    "collision_checks",
    "runtime_us",
];

impl BenchRecord {
    pub fn start(&self) -> DiscreteState {
        DiscreteState::new(self.si, self.sj, Heading(self.s_heading))
    }

    pub fn goal(&self) -> DiscreteState {
        DiscreteState::new(self.gi, self.gj, Heading(self.g_heading))
    }

    fn instance_key(&self) -> (String, usize, DiscreteState, DiscreteState) {
        (self.map.clone(), self.scen_index, self.start(), self.goal())
    }
}

/// Planners and weights to run on every instance.
#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub algorithms: Vec<Algorithm>,
    pub weights: Vec<f64>,
    pub interleave: u32,
    pub heuristic_scale: f64,
    pub jobs: usize,
}

/// Run every instance on one map. Rows come out in instance, then
/// algorithm, then weight order whatever `jobs` is.
pub fn run_instances(
    grid: &OccupancyGrid,
    cs: &ControlSet,
    tables: &MeshTables,
    instances: &[BenchInstance],
    plan: &SweepPlan,
) -> Vec<BenchRecord> {
    let run_one = |inst: &BenchInstance, oracle: Option<f64>| -> Vec<BenchRecord> {
        let base = PlanRequest::new(grid, cs, tables, inst.start, inst.goal)
            .with_heuristic_scale(plan.heuristic_scale);
        let mut rows = Vec::with_capacity(plan.algorithms.len() * plan.weights.len());
        for &algo in &plan.algorithms {
            for &w in &plan.weights {
                let r = algo.plan(&base.with_weight(w), plan.interleave);
                let m = &r.metrics;
                rows.push(BenchRecord {
                    map: inst.map.clone(),
                    scen_index: inst.scen_index,
                    si: inst.start.i,
                    sj: inst.start.j,
                    s_heading: inst.start.heading.0,
                    gi: inst.goal.i,
                    gj: inst.goal.j,
                    g_heading: inst.goal.heading.0,
                    algo,
                    w,
                    solved: m.solved,
                    cost: m.cost,
                    oracle_cost: oracle,
                    cost_ratio: match (m.cost, oracle) {
                        (Some(c), Some(o)) if o > 0.0 => Some(c / o),
                        (Some(_), Some(_)) => Some(1.0),
                        _ => None,
                    },
                    expansions: m.expansions,
                    generated: m.generated,
                    collision_checks: m.collision_checks,
                    runtime_us: m.runtime.as_micros() as u64,
                });
            }
        }
        rows
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        // the oracle depends only on (start, goal); compute each once
        let mut unique: Vec<(DiscreteState, DiscreteState)> =
            instances.iter().map(|i| (i.start, i.goal)).collect();
        unique.sort();
        unique.dedup();
        let oracle: HashMap<(DiscreteState, DiscreteState), Option<f64>> = unique
            .par_iter()
            .map(|&(s, g)| {
                (
                    (s, g),
                    dijkstra_oracle(&PlanRequest::new(grid, cs, tables, s, g)),
                )
            })
            .collect();
        instances
            .par_iter()
            .map(|inst| run_one(inst, oracle[&(inst.start, inst.goal)]))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    })
}

pub fn write_csv(path: &Path, records: &[BenchRecord]) -> Result<(), BenchError> {
    let file = fs::File::create(path).map_err(|source| BenchError::Io {
        path: path.into(),
        source,
    })?;
    write_csv_to(file, records)
}

pub fn write_csv_to(out: impl io::Write, records: &[BenchRecord]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_COLUMNS)?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<BenchRecord>, BenchError> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize()
        .collect::<Result<Vec<_>, _>>()
        .map_err(BenchError::from)
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    })
}

/// Medians for one planner over the instances every planner solved.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub map: String,
    pub w: f64,
    pub algo: Algorithm,
    pub paired: usize,
    pub cost_ratio: Option<f64>,
    /// Runtime relative to LBA* on the same instance, when LBA* was run.
    pub runtime_ratio: Option<f64>,
    pub expansions: Option<f64>,
    pub collision_checks: Option<f64>,
    pub runtime_us: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Summary {
    pub rows: Vec<SummaryRow>,
}

impl Summary {
    /// Paired comparison per map and weight: only instances solved by every
    /// planner present (and by the oracle) count.
    pub fn from_records(records: &[BenchRecord]) -> Self {
        type Key = (String, usize, DiscreteState, DiscreteState);
        let mut groups: BTreeMap<(String, u64), BTreeMap<Key, Vec<&BenchRecord>>> = BTreeMap::new();
        for r in records {
            groups
                .entry((r.map.clone(), r.w.to_bits()))
                .or_default()
                .entry(r.instance_key())
                .or_default()
                .push(r);
        }
        let mut rows = Vec::new();
        for ((map, wbits), instances) in groups {
            let mut algos: Vec<Algorithm> = instances.values().flatten().map(|r| r.algo).collect();
            algos.sort_by_key(|a| Algorithm::ALL.iter().position(|b| b == a));
            algos.dedup();
            let paired: Vec<&Vec<&BenchRecord>> = instances
                .values()
                .filter(|rs| {
                    rs.iter().all(|r| r.solved && r.oracle_cost.is_some())
                        && algos.iter().all(|a| rs.iter().any(|r| r.algo == *a))
                })
                .collect();
            for &algo in &algos {
                let mut cost = Vec::new();
                let mut runtime_ratio = Vec::new();
                let mut expansions = Vec::new();
                let mut checks = Vec::new();
                let mut runtime = Vec::new();
                for rs in &paired {
                    let Some(r) = rs.iter().find(|r| r.algo == algo) else {
                        continue;
                    };
                    cost.extend(r.cost_ratio);
                    expansions.push(r.expansions as f64);
                    checks.push(r.collision_checks as f64);
                    runtime.push(r.runtime_us as f64);
                    if let Some(lba) = rs.iter().find(|r| r.algo == Algorithm::Lba) {
                        runtime_ratio
                            .push(r.runtime_us.max(1) as f64 / lba.runtime_us.max(1) as f64);
                    }
                }
                rows.push(SummaryRow {
                    map: map.clone(),
                    w: f64::from_bits(wbits),
                    algo,
                    paired: paired.len(),
                    cost_ratio: median(&cost),
                    runtime_ratio: median(&runtime_ratio),
                    expansions: median(&expansions),
                    collision_checks: median(&checks),
                    runtime_us: median(&runtime),
                });
            }
        }
        Summary { rows }
    }

    pub fn row(&self, map: &str, w: f64, algo: Algorithm) -> Option<&SummaryRow> {
        self.rows
            .iter()
            .find(|r| r.map == map && r.w == w && r.algo == algo)
    }

    /// Maps and weights where MeshA*'s median expansions undercut LBA*'s.
    pub fn mesh_undercuts_lba(&self) -> Vec<(String, f64)> {
        self.rows
            .iter()
            .filter(|r| r.algo == Algorithm::Mesh)
            .filter(|m| {
                self.row(&m.map, m.w, Algorithm::Lba).is_some_and(
                    |l| matches!((m.expansions, l.expansions), (Some(a), Some(b)) if a < b),
                )
            })
            .map(|m| (m.map.clone(), m.w))
            .collect()
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<f64>, prec: usize| {
            v.map_or_else(|| "-".to_string(), |x| format!("{x:.prec$}"))
        };
        writeln!(
            f,
            "{:<24} {:>5} {:<13} {:>6} {:>10} {:>10} {:>11} {:>11} {:>11}",
            "map",
            "w",
            "algo",
            "paired",
            "cost %",
            "time/LBA",
            "expansions",
            "checks",
            "runtime us"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<24} {:>5} {:<13} {:>6} {:>10} {:>10} {:>11} {:>11} {:>11}",
                r.map,
                r.w,
                r.algo.name(),
                r.paired,
                opt(r.cost_ratio.map(|c| 100.0 * c), 2),
                opt(r.runtime_ratio, 3),
                opt(r.expansions, 1),
                opt(r.collision_checks, 1),
                opt(r.runtime_us, 0)
            )?;
        }
        for (map, w) in self.mesh_undercuts_lba() {
            writeln!(
                f,
                "note: mesh median expansions below lba on {map} at w={w}"
            )?;
        }
        Ok(())
    }
}

/// Everything a sweep needs, read and checked before any planning starts.
pub struct LoadedBench {
    pub config: BenchConfig,
    pub control_set: ControlSet,
    pub tables: MeshTables,
    pub maps: Vec<(String, OccupancyGrid, Vec<BenchInstance>)>,
}

pub fn load_bench(config: BenchConfig) -> Result<LoadedBench, BenchError> {
    let read = |p: &Path| {
        fs::read_to_string(p).map_err(|source| BenchError::Io {
            path: p.into(),
            source,
        })
    };
    let cs_path = &config.control_set;
    let control_set =
        ControlSet::load(&read(cs_path)?).map_err(|source| BenchError::ControlSet {
            path: cs_path.clone(),
            source,
        })?;
    let tables = match &config.cache {
        Some(cache) => load_or_build(cache, &control_set)?.0,
        None => MeshTables::build(&control_set),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut maps = Vec::new();
    for (map_path, scen_path) in config.maps.iter().zip(&config.scenarios) {
        let grid =
            OccupancyGrid::parse_map(&read(map_path)?).map_err(|source| BenchError::Map {
                path: map_path.clone(),
                source,
            })?;
        let mut entries = parse_scen(&read(scen_path)?).map_err(|source| BenchError::Scenario {
            path: scen_path.clone(),
            source,
        })?;
        validate_scenarios(&entries, &grid).map_err(|source| BenchError::Scenario {
            path: scen_path.clone(),
            source,
        })?;
        if let Some(n) = config.max_pairs {
            entries.truncate(n);
        }
        let name = map_path.file_name().map_or_else(
            || map_path.display().to_string(),
            |n| n.to_string_lossy().into_owned(),
        );
        let instances = make_instances(
            &name,
            &entries,
            control_set.heading_count,
            config.headings_per_pair,
            &mut rng,
        );
        maps.push((name, grid, instances));
    }
    Ok(LoadedBench {
        config,
        control_set,
        tables,
        maps,
    })
}

impl LoadedBench {
    pub fn run(&self) -> Vec<BenchRecord> {
        let plan = SweepPlan {
            algorithms: self.config.algorithms.clone(),
            weights: self.config.weights.clone(),
            interleave: self.config.interleave,
            heuristic_scale: 1.0,
            jobs: self.config.jobs,
        };
        self.maps
            .iter()
            .flat_map(|(_, grid, instances)| {
                run_instances(grid, &self.control_set, &self.tables, instances, &plan)
            })
            .collect()
    }
}
