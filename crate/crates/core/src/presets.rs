//! Bundled datasets.

use crate::clustering::{Clustering, Dataset};
use crate::error::Result;
use crate::io::{parse_dataset, parse_labels};
use crate::scalar::Scalar;

pub const IRIS_CSV: &str = include_str!("../data/iris.csv");
pub const IRIS_LABELS: &str = include_str!("../data/iris_labels.txt");
pub const TOY_CSV: &str = include_str!("../data/toy.csv");

/// The 150 Iris flowers, four raw measurements in centimetres.
pub fn iris<T: Scalar>() -> Result<Dataset<T>> {
    parse_dataset(IRIS_CSV)
}

/// The species of each Iris flower.
pub fn iris_labels() -> Result<Clustering> {
    parse_labels(IRIS_LABELS)
}

/// 60 two-dimensional points in three blobs.
pub fn toy<T: Scalar>() -> Result<Dataset<T>> {
    parse_dataset(TOY_CSV)
}
