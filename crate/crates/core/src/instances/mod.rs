//! Problem instances: unit disk graphs for MIS, weighted Erdős–Rényi graphs
//! for MaxCut and symmetric TSP distance matrices.

mod file;
mod graph;
mod maxcut;
mod tsp;
mod tsplib;
mod udmis;

pub use file::{Instance, InstanceFile, ProblemClass};
pub use graph::{Edge, Graph};
pub use maxcut::{cut_weight, gen_maxcut, gen_maxcut_with_draw, MaxCutDraw};
pub use tsp::{subsample_tsp, subsample_tsp_indexed, TspInstance};
pub use tsplib::{euc_2d, parse_tsplib};
pub use udmis::{gen_udmis, unit_disk_graph, window_side, within_radius, UnitDiskInstance};
