mod common;

use std::collections::{BTreeSet, HashMap};

use common::{arb_control_set, data_dir, gen8};
use meshplan::control_set::{toy2, ControlSet};
use meshplan::grid_map::GridCell;
use meshplan::mesh_graph::{
    direct_successors, init_conf, read_cache, write_cache, ConfigId, Configuration, ExtendedCell,
    MeshTables, SuccessorKind,
};
use meshplan::search::{euclidean_h, mesh_h};
use proptest::prelude::*;

/// Follow primitive `p` through the tables from its initial configuration.
/// Returns the visited projections and the accumulated cost.
fn walk_primitive(tables: &MeshTables, cs: &ControlSet, id: u32) -> Option<(Vec<GridCell>, f64)> {
    let p = cs.primitive(id);
    let mut u = ExtendedCell::new(GridCell::ORIGIN, tables.initial_of(p.start_heading));
    let mut cells = vec![u.cell()];
    let mut cost = 0.0;
    for k in 0..p.trace_len() - 1 {
        let last = k + 2 == p.trace_len();
        let (v, r) = tables.successors(u).find(|(v, r)| {
            v.cell() == p.trace[k + 1]
                && if last {
                    r.via == Some(id)
                } else {
                    r.kind == SuccessorKind::NonInitial
                        && tables.configuration(r.next).members().contains(&id)
                }
        })?;
        cost += r.cost;
        cells.push(v.cell());
        u = v;
    }
    (tables.initial_of(p.end_heading) == u.config).then_some((cells, cost))
}

fn check_single_primitives(cs: &ControlSet) -> Result<(), TestCaseError> {
    let tables = MeshTables::build(cs);
    for p in &cs.primitives {
        let (cells, cost) = walk_primitive(&tables, cs, p.id)
            .ok_or_else(|| TestCaseError::fail(format!("primitive {} has no mesh path", p.id)))?;
        prop_assert_eq!(&cells, &p.trace);
        prop_assert_eq!(cost, p.cost);
    }
    Ok(())
}

fn check_tables(cs: &ControlSet) -> Result<(), TestCaseError> {
    let tables = MeshTables::build(cs);
    let mut seen = HashMap::new();
    for id in tables.config_ids() {
        let c = tables.configuration(id);
        prop_assert_eq!(tables.lookup(c), Some(id));
        prop_assert!(seen.insert(c.clone(), id).is_none(), "{} numbered twice", c);
        let mut direct: Vec<_> = direct_successors(c, cs)
            .into_iter()
            .map(|s| {
                (
                    s.delta,
                    tables.lookup(&s.config),
                    s.cost.to_bits(),
                    s.kind,
                    s.via,
                )
            })
            .collect();
        let mut table: Vec<_> = tables
            .records(id)
            .iter()
            .map(|r| (r.delta, Some(r.next), r.cost.to_bits(), r.kind, r.via))
            .collect();
        direct.sort_by_key(|t| format!("{t:?}"));
        table.sort_by_key(|t| format!("{t:?}"));
        prop_assert_eq!(direct, table);
        for r in tables.records(id) {
            prop_assert_eq!(r.kind == SuccessorKind::Initial, tables.is_initial(r.next));
            prop_assert_eq!(r.via.is_some(), r.kind == SuccessorKind::Initial);
            if r.kind == SuccessorKind::NonInitial {
                prop_assert_eq!(r.cost, 0.0);
            }
        }
    }
    for h in cs.headings() {
        prop_assert_eq!(
            tables.configuration(tables.initial_of(h)),
            &init_conf(h, cs)
        );
        prop_assert_eq!(tables.heading_of_initial(tables.initial_of(h)), Some(h));
    }
    let ids: Vec<ConfigId> = tables.config_ids().collect();
    for &a in &ids {
        for &b in &ids {
            let same = tables.reachable_projection_set(a) == tables.reachable_projection_set(b);
            prop_assert_eq!(same, tables.soft_id(a) == tables.soft_id(b));
        }
    }
    Ok(())
}

fn check_heuristic(cs: &ControlSet, goals: &[GridCell]) -> Result<(), TestCaseError> {
    let tables = MeshTables::build(cs);
    for id in tables.config_ids() {
        let u = ExtendedCell::new(GridCell::new(3, -2), id);
        for &goal in goals {
            let base = |c: GridCell| euclidean_h(c, goal);
            let hu = mesh_h(u, &tables, base);
            if tables.is_initial(id) {
                prop_assert_eq!(hu, base(u.cell()));
            }
            for (v, r) in tables.successors(u) {
                prop_assert!(hu <= r.cost + mesh_h(v, &tables, base) + 1e-9);
            }
        }
    }
    Ok(())
}

#[test]
fn fixed_sets_single_primitive_paths() {
    for cs in [toy2(), gen8()] {
        check_single_primitives(&cs).unwrap();
        check_tables(&cs).unwrap();
    }
}

#[test]
fn sixteen_heading_set() {
    let cs = ControlSet::load(
        &std::fs::read_to_string(data_dir().join("control_sets/gen16x24.json")).unwrap(),
    )
    .unwrap();
    check_single_primitives(&cs).unwrap();
    let tables = MeshTables::build(&cs);
    assert_eq!(tables.config_count(), 528);
    assert_eq!(tables.soft_class_count(), 136);
}

#[test]
fn toy2_has_four_configurations() {
    let tables = MeshTables::build(&toy2());
    assert_eq!(tables.config_count(), 4);
    let initial = tables
        .config_ids()
        .filter(|&id| tables.is_initial(id))
        .count();
    assert_eq!(initial, 2);
}

#[test]
fn cache_file_roundtrip() {
    let cs = gen8();
    let tables = MeshTables::build(&cs);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen8.tables.json");
    write_cache(&path, &cs, &tables).unwrap();
    let back = read_cache(&path, &cs).unwrap();
    for id in tables.config_ids() {
        assert_eq!(back.configuration(id), tables.configuration(id));
        assert_eq!(back.records(id), tables.records(id));
        assert_eq!(back.soft_id(id), tables.soft_id(id));
    }
    let mut other = cs.clone();
    other.primitives[0].cost += 1.0;
    assert!(read_cache(&path, &other).is_err());
}

#[test]
fn configurations_are_canonical() {
    let cs = gen8();
    let tables = MeshTables::build(&cs);
    for c in tables.configurations() {
        if let Configuration::Bundle { k, members } = c {
            let sorted: BTreeSet<_> = members.iter().copied().collect();
            assert_eq!(sorted.into_iter().collect::<Vec<_>>(), *members);
            for &m in members {
                assert!((*k as usize) < cs.primitive(m).trace_len());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_sets_single_primitive_paths(cs in arb_control_set()) {
        check_single_primitives(&cs)?;
    }

    #[test]
    fn random_sets_tables_match_direct(cs in arb_control_set()) {
        check_tables(&cs)?;
    }

    #[test]
    fn random_sets_heuristic_consistent(
        cs in arb_control_set(),
        goals in prop::collection::vec((-15i32..15, -15i32..15), 1..8),
    ) {
        let goals: Vec<GridCell> = goals.into_iter().map(|(i, j)| GridCell::new(i, j)).collect();
        check_heuristic(&cs, &goals)?;
    }
}
