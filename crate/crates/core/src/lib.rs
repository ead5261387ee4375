//! Hierarchical partitioning of sets of clusterings.
//!
//! A set of clusterings of one dataset is encoded as a binary matrix with
//! one row per clustering and one column per pair of points. HPREF splits
//! the rows recursively by their most repeated non-constant column, giving
//! a weighted dendrogram over the clusterings and an ultrametric between
//! them.
//!
//! ```
//! use hpref::{assign_weights, build_matrix, enumerate_pairs, run_hpref};
//! use hpref::{Clustering, ClusteringSet, HprefConfig};
//!
//! let set = ClusteringSet::new(vec![
//!     Clustering::from_codes(&[0, 0, 1, 1]).unwrap(),
//!     Clustering::from_codes(&[0, 0, 1, -1]).unwrap(),
//!     Clustering::from_codes(&[0, 0, 0, 0]).unwrap(),
//! ])
//! .unwrap();
//! let fm = build_matrix(&set, &enumerate_pairs(set.n_points())).unwrap();
//! let tree = assign_weights(run_hpref(&fm, &HprefConfig::new(3).unwrap()).unwrap());
//! assert_eq!(tree.multiplicities(), vec![4, 2]);
//! assert_eq!(tree.cut(2).unwrap(), vec![vec![2], vec![0, 1]]);
//! ```

pub mod analysis;
pub mod clustering;
pub mod drivers;
mod error;
pub mod grouping;
pub mod hpref;
pub mod io;
pub mod matrix;
pub mod metric;
pub mod pairs;
pub mod presets;
mod scalar;
pub mod stability;

pub use clustering::{canonicalize, pair_bit, Clustering, ClusteringSet, Dataset, Label, Provenance};
pub use error::{HprefError, Result};
pub use grouping::{group_columns, ColumnGroup, ColumnGroups};
pub use hpref::{
    assign_weights, run_hpref, run_hpref_with, score, CountPlusMultiplicity, Dendrogram,
    HprefConfig, HprefNode, NodeId, Partition, ScoringFunction, Split, SplitEvent,
};
pub use matrix::{build_matrix, BitPattern, FeatureMatrix};
pub use metric::{induced_metric, Ultrametric};
pub use pairs::{
    enumerate_pairs, pair_count, sample_pairs, Pair, PairSample, PairSpec, SampleDescriptor,
    SampleMode,
};
pub use scalar::Scalar;
pub use stability::{resample_stability, StabilityConfig, StabilityReport};

pub type Dataset64 = Dataset<f64>;
pub type Dataset32 = Dataset<f32>;
pub type KmeansResult64 = drivers::KmeansResult<f64>;
pub type KmeansResult32 = drivers::KmeansResult<f32>;
pub type DbscanParams64 = drivers::DbscanParams<f64>;
pub type DbscanParams32 = drivers::DbscanParams<f32>;
pub type PcaProjection64 = analysis::PcaProjection<f64>;
pub type PcaProjection32 = analysis::PcaProjection<f32>;
pub type ClassStats64 = analysis::ClassStats<f64>;
pub type ClassStats32 = analysis::ClassStats<f32>;
