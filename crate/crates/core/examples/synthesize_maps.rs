//! Write seeded synthetic maps and scenario files in the MovingAI formats.
//!
//! ```bash
//! cargo run --example synthesize_maps -- crates/core/data/maps
//! ```
//!
//! Produces a corridor maze, an open map with scattered blocks and one
//! random-obstacle grid, each with a `.scen` file of connected pairs.

use std::path::PathBuf;

use meshplan::bench::synth::{maze, random_grid, random_scenarios, rooms};
use meshplan::grid_map::{parse_scen, scen_to_string, OccupancyGrid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "maps".into()));
    std::fs::create_dir_all(&out)?;

    let maps: [(&str, OccupancyGrid, f64); 3] = [
        (
            "maze_c8",
            maze(8, 8, 8, &mut ChaCha8Rng::seed_from_u64(31)),
            12.0,
        ),
        (
            "rooms128",
            rooms(128, 128, 60, 10, &mut ChaCha8Rng::seed_from_u64(5)),
            24.0,
        ),
        (
            "random64_d20",
            random_grid(64, 64, 0.2, &mut ChaCha8Rng::seed_from_u64(2)),
            12.0,
        ),
    ];
    for (name, grid, min_distance) in &maps {
        let map_file = format!("{name}.map");
        let scen = random_scenarios(
            grid,
            &map_file,
            250,
            *min_distance,
            &mut ChaCha8Rng::seed_from_u64(100),
        );
        let scen_text = scen_to_string(&scen);
        assert_eq!(parse_scen(&scen_text)?.len(), scen.len());
        std::fs::write(out.join(&map_file), grid.to_map_string())?;
        std::fs::write(out.join(format!("{map_file}.scen")), scen_text)?;
        println!(
            "{map_file}: {}x{}, {} free cells, {} scenario pairs",
            grid.width(),
            grid.height(),
            grid.free_count(),
            scen.len()
        );
    }
    Ok(())
}
