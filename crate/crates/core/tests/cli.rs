mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::data_dir;
use meshplan::bench::{read_csv, CSV_COLUMNS};

fn meshplan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meshplan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn data(rel: &str) -> String {
    data_dir().join(rel).to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn precompute_then_cache_hit_keeps_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("gen8.tables.json");
    let cs = data("control_sets/gen8.json");
    let first = meshplan(&["precompute", "--control-set", &cs, "--out", path(&cache)]);
    assert!(first.status.success());
    assert!(stdout(&first).contains("configurations: 60"));
    let bytes = std::fs::read(&cache).unwrap();
    let second = meshplan(&["precompute", "--control-set", &cs, "--out", path(&cache)]);
    assert!(second.status.success());
    assert!(stdout(&second).starts_with("cache hit"));
    assert_eq!(std::fs::read(&cache).unwrap(), bytes);
}

#[test]
fn stale_cache_is_rebuilt_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("tables.json");
    let (toy, gen) = (
        data("control_sets/toy2.json"),
        data("control_sets/gen8.json"),
    );
    assert!(
        meshplan(&["precompute", "--control-set", &toy, "--out", path(&cache)])
            .status
            .success()
    );
    let o = meshplan(&["precompute", "--control-set", &gen, "--out", path(&cache)]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert!(stdout(&o).contains("configurations: 60"));
}

#[test]
fn plan_writes_svg_and_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let (svg, traj, again) = (
        dir.path().join("p.svg"),
        dir.path().join("p.json"),
        dir.path().join("again.svg"),
    );
    let map = data("maps/rooms128.map");
    let o = meshplan(&[
        "plan",
        "--map",
        &map,
        "--control-set",
        &data("control_sets/gen8.json"),
        "--start",
        "10,10,0",
        "--goal",
        "40,30,2",
        "--algo",
        "mesh_parall",
        "--weight",
        "2",
        "--svg",
        path(&svg),
        "--save",
        path(&traj),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("cost: "));
    let ids_line = out.lines().find(|l| l.starts_with("primitives: ")).unwrap();
    let count = ids_line.matches(',').count() + 1;
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), count);

    let r = meshplan(&[
        "render",
        "--map",
        &map,
        "--trajectory",
        path(&traj),
        "--out",
        path(&again),
    ]);
    assert!(r.status.success());
    assert_eq!(std::fs::read_to_string(&again).unwrap(), text);
}

#[test]
fn unreachable_goal_exits_with_no_path() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("wall.map");
    // a full wall at column 3 splits the map
    let rows: Vec<String> = (0..6).map(|_| "...@..".to_string()).collect();
    std::fs::write(
        &map,
        format!("type octile\nheight 6\nwidth 6\nmap\n{}\n", rows.join("\n")),
    )
    .unwrap();
    let o = meshplan(&[
        "plan",
        "--map",
        path(&map),
        "--control-set",
        &data("control_sets/gen8.json"),
        "--start",
        "0,0,0",
        "--goal",
        "5,5,0",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no path"));
}

#[test]
fn bad_input_exits_with_error() {
    let cs = data("control_sets/gen8.json");
    let map = data("maps/maze_c8.map");
    let outside = meshplan(&[
        "plan",
        "--map",
        &map,
        "--control-set",
        &cs,
        "--start",
        "0,0,0",
        "--goal",
        "500,1,0",
    ]);
    assert_eq!(outside.status.code(), Some(1));
    let heading = meshplan(&[
        "plan",
        "--map",
        &map,
        "--control-set",
        &cs,
        "--start",
        "4,4,9",
        "--goal",
        "5,5,0",
    ]);
    assert_eq!(heading.status.code(), Some(1));
    let missing = meshplan(&[
        "plan",
        "--map",
        "/nonexistent.map",
        "--control-set",
        &cs,
        "--start",
        "1,1,0",
        "--goal",
        "2,2,0",
    ]);
    assert_eq!(missing.status.code(), Some(1));
    let syntax = meshplan(&[
        "plan",
        "--map",
        &map,
        "--control-set",
        &cs,
        "--start",
        "1;1;0",
        "--goal",
        "2,2,0",
    ]);
    assert!(!syntax.status.success());
}

#[test]
fn bench_writes_csv_and_render_replays_a_row() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bench.json");
    std::fs::write(
        &config,
        serde_json::json!({
            "maps": [data("maps/random64_d20.map")],
            "scenarios": [data("maps/random64_d20.map.scen")],
            "control_set": data("control_sets/gen8.json"),
            "algorithms": ["lba", "mesh"],
            "weights": [1.0, 2.0],
            "headings_per_pair": 1,
            "seed": 3,
            "max_pairs": 6
        })
        .to_string(),
    )
    .unwrap();
    let csv = dir.path().join("out.csv");
    let o = meshplan(&[
        "bench",
        "--config",
        path(&config),
        "--out",
        path(&csv),
        "--jobs",
        "2",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
    let rows = read_csv(&csv).unwrap();
    assert_eq!(rows.len(), 6 * 2 * 2);

    let row = rows
        .iter()
        .position(|r| r.solved && !r.cost.is_some_and(|c| c == 0.0))
        .unwrap();
    let svg = dir.path().join("row.svg");
    let r = meshplan(&[
        "render",
        "--map",
        &data("maps/random64_d20.map"),
        "--csv",
        path(&csv),
        "--row",
        &row.to_string(),
        "--control-set",
        &data("control_sets/gen8.json"),
        "--out",
        path(&svg),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
}

#[test]
fn shipped_bench_config_loads() {
    let cfg = meshplan::bench::BenchConfig::load(&data_dir().join("bench_small.json")).unwrap();
    assert!(cfg.maps.iter().chain(&cfg.scenarios).all(|p| p.exists()));
}
