//! Motion-primitive path planning on occupancy grids: A* over the state
//! lattice and over the mesh graph of extended cells.
//!
//! ```
//! use meshplan::control_set::{toy2, Heading};
//! use meshplan::grid_map::OccupancyGrid;
//! use meshplan::lattice::DiscreteState;
//! use meshplan::mesh_graph::MeshTables;
//! use meshplan::search::{plan_mesh, PlanRequest};
//!
//! let cs = toy2();
//! let tables = MeshTables::build(&cs);
//! let grid = OccupancyGrid::empty(10, 10);
//! let east = Heading(0);
//! let req = PlanRequest::new(&grid, &cs, &tables, DiscreteState::new(0, 0, east), DiscreteState::new(4, 0, east));
//! assert_eq!(plan_mesh(&req).cost(), Some(4.0));
//! ```

pub mod bench;
pub mod control_set;
pub mod grid_map;
pub mod lattice;
pub mod mesh_graph;
pub mod render;
pub mod search;
