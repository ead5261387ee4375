//! Bundled clustering algorithms used to produce sets of clusterings.

pub mod dbscan;
pub mod grid;
pub mod kmeans;
pub mod synthetic;

pub use dbscan::{core_points, dbscan, DbscanParams};
pub use grid::{format_param, run_grid, DbscanGrid, EpsValues, GridSpec, KmeansRuns};
pub use kmeans::{lloyd, phi, plusplus_init, KmeansInit, KmeansParams, KmeansResult};
pub use synthetic::{two_regime_set, PlantedSet, TwoRegimeConfig};
