use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use meshplan::bench::{load_bench, read_csv, write_csv, BenchConfig, Summary};
use meshplan::control_set::{ControlSet, Heading};
use meshplan::grid_map::OccupancyGrid;
use meshplan::lattice::DiscreteState;
use meshplan::mesh_graph::{load_or_build, CacheStatus, MeshTables};
use meshplan::render::{render_svg, RenderOptions};
use meshplan::search::{Algorithm, PlanRequest, Trajectory, DEFAULT_INTERLEAVE};

const EXIT_ERROR: u8 = 1;
const EXIT_NO_PATH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "meshplan",
    version,
    about = "Lattice and mesh-graph A* planners over motion primitives"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number the configurations of a control set and write the tables cache.
    Precompute {
        #[arg(long)]
        control_set: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Plan one query on a map.
    Plan(PlanArgs),
    /// Run a benchmark sweep described by a JSON config.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// CSV output (overrides the config's `output`).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Draw a saved trajectory, or one row of a bench CSV, as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long)]
    map: PathBuf,
    #[arg(long)]
    control_set: PathBuf,
    #[arg(long)]
    cache: Option<PathBuf>,
    /// `i,j,heading`, origin at the lower-left cell.
    #[arg(long, value_parser = parse_state)]
    start: DiscreteState,
    #[arg(long, value_parser = parse_state)]
    goal: DiscreteState,
    #[arg(long, default_value = "mesh")]
    algo: Algorithm,
    #[arg(long, default_value_t = 1.0)]
    weight: f64,
    #[arg(long, default_value_t = DEFAULT_INTERLEAVE)]
    interleave: u32,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write the trajectory as JSON.
    #[arg(long)]
    save: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    map: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Trajectory JSON written by `plan --save`.
    #[arg(long, conflicts_with = "csv")]
    trajectory: Option<PathBuf>,
    /// Bench CSV; the row is re-planned.
    #[arg(long, requires_all = ["row", "control_set"])]
    csv: Option<PathBuf>,
    /// 0-based data row of the CSV.
    #[arg(long)]
    row: Option<usize>,
    #[arg(long)]
    control_set: Option<PathBuf>,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, default_value_t = 12)]
    cell_px: u32,
}

fn parse_state(s: &str) -> Result<DiscreteState, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [i, j, h] = parts.as_slice() else {
        return Err(format!("expected i,j,heading, found {s:?}"));
    };
    let num = |v: &str| {
        v.parse::<i64>()
            .map_err(|_| format!("{v:?} is not an integer"))
    };
    let (i, j, h) = (num(i)?, num(j)?, num(h)?);
    let h = u16::try_from(h).map_err(|_| format!("heading {h} out of range"))?;
    Ok(DiscreteState::new(i as i32, j as i32, Heading(h)))
}

type Failure = (u8, String);

fn fail(msg: impl ToString) -> Failure {
    (EXIT_ERROR, msg.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn load_control_set(path: &Path) -> Result<ControlSet, Failure> {
    ControlSet::load(&read(path)?).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<OccupancyGrid, Failure> {
    OccupancyGrid::parse_map(&read(path)?).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn tables_for(cs: &ControlSet, cache: Option<&Path>) -> Result<MeshTables, Failure> {
    let Some(cache) = cache else {
        return Ok(MeshTables::build(cs));
    };
    let (tables, status) = load_or_build(cache, cs).map_err(fail)?;
    if let CacheStatus::Rebuilt(why) = status {
        eprintln!("warning: {} was rebuilt ({why})", cache.display());
    }
    Ok(tables)
}

fn precompute(control_set: &Path, out: &Path) -> Result<(), Failure> {
    let cs = load_control_set(control_set)?;
    let (tables, status) = load_or_build(out, &cs).map_err(fail)?;
    match status {
        CacheStatus::Hit => println!("cache hit: {}", out.display()),
        CacheStatus::Built => println!("wrote {}", out.display()),
        CacheStatus::Rebuilt(why) => {
            eprintln!("warning: existing cache replaced ({why})");
            println!("wrote {}", out.display());
        }
    }
    println!("configurations: {}", tables.config_count());
    println!("soft-duplicate classes: {}", tables.soft_class_count());
    Ok(())
}

fn check_in_bounds(
    grid: &OccupancyGrid,
    cs: &ControlSet,
    s: DiscreteState,
    what: &str,
) -> Result<(), Failure> {
    if !grid.in_bounds(s.cell()) {
        return Err(fail(format!(
            "{what} {s} is outside the {}x{} map",
            grid.width(),
            grid.height()
        )));
    }
    if s.heading.0 >= cs.heading_count {
        return Err(fail(format!(
            "{what} heading {} exceeds the {} headings of the control set",
            s.heading, cs.heading_count
        )));
    }
    Ok(())
}

fn plan(args: &PlanArgs) -> Result<(), Failure> {
    let grid = load_map(&args.map)?;
    let cs = load_control_set(&args.control_set)?;
    check_in_bounds(&grid, &cs, args.start, "start")?;
    check_in_bounds(&grid, &cs, args.goal, "goal")?;
    if !(args.weight.is_finite() && args.weight >= 1.0) {
        return Err(fail(format!("weight must be >= 1, found {}", args.weight)));
    }
    if args.interleave == 0 {
        return Err(fail("interleave must be positive"));
    }
    let tables = tables_for(&cs, args.cache.as_deref())?;
    let req = PlanRequest::new(&grid, &cs, &tables, args.start, args.goal).with_weight(args.weight);
    let result = args.algo.plan(&req, args.interleave);
    let m = &result.metrics;
    println!("algorithm: {}  weight: {}", args.algo, args.weight);
    println!(
        "expansions: {}  generated: {}  collision checks: {}",
        m.expansions, m.generated, m.collision_checks
    );
    println!("runtime: {} us", m.runtime.as_micros());
    let Some(t) = result.trajectory else {
        return Err((EXIT_NO_PATH, "no path".to_string()));
    };
    println!("cost: {}", t.total_cost);
    println!("primitives: {:?}", t.template_ids());
    if let Some(svg) = &args.svg {
        write(svg, &render_svg(&grid, Some(&t), &RenderOptions::default()))?;
    }
    if let Some(path) = &args.save {
        let json = serde_json::to_string_pretty(&t).map_err(fail)?;
        write(path, &(json + "\n"))?;
    }
    Ok(())
}

fn bench(config: &Path, out: Option<&Path>, jobs: Option<usize>) -> Result<(), Failure> {
    let mut cfg = BenchConfig::load(config).map_err(fail)?;
    if let Some(jobs) = jobs {
        cfg.jobs = jobs;
    }
    if let Some(out) = out {
        cfg.output = Some(out.to_path_buf());
    }
    cfg.validate().map_err(fail)?;
    let loaded = load_bench(cfg).map_err(fail)?;
    let records = loaded.run();
    if let Some(path) = &loaded.config.output {
        write_csv(path, &records).map_err(fail)?;
        println!("wrote {} rows to {}", records.len(), path.display());
    }
    print!("{}", Summary::from_records(&records));
    Ok(())
}

fn render(args: &RenderArgs) -> Result<(), Failure> {
    let grid = load_map(&args.map)?;
    let trajectory: Trajectory = match (&args.trajectory, &args.csv) {
        (Some(path), _) => serde_json::from_str(&read(path)?)
            .map_err(|e| fail(format!("{}: {e}", path.display())))?,
        (None, Some(csv)) => {
            let rows = read_csv(csv).map_err(fail)?;
            let row = args.row.unwrap_or(0);
            let r = rows.get(row).ok_or_else(|| {
                fail(format!(
                    "{} has {} rows, no row {row}",
                    csv.display(),
                    rows.len()
                ))
            })?;
            let cs_path = args
                .control_set
                .as_deref()
                .ok_or_else(|| fail("--csv needs --control-set"))?;
            let cs = load_control_set(cs_path)?;
            let tables = tables_for(&cs, args.cache.as_deref())?;
            let req = PlanRequest::new(&grid, &cs, &tables, r.start(), r.goal()).with_weight(r.w);
            let result = r.algo.plan(&req, DEFAULT_INTERLEAVE);
            result
                .trajectory
                .ok_or((EXIT_NO_PATH, "no path".to_string()))?
        }
        (None, None) => return Err(fail("render needs --trajectory or --csv")),
    };
    let opts = RenderOptions {
        cell_px: args.cell_px,
        ..RenderOptions::default()
    };
    write(&args.out, &render_svg(&grid, Some(&trajectory), &opts))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Precompute { control_set, out } => precompute(control_set, out),
        Command::Plan(args) => plan(args),
        Command::Bench { config, out, jobs } => bench(config, out.as_deref(), *jobs),
        Command::Render(args) => render(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
