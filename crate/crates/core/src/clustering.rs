//! Datasets, clusterings with explicit noise, and the pair-membership bit
//! that every other module is built on.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{HprefError, Result};
use crate::scalar::Scalar;

/// Free-form provenance attached to a clustering (algorithm, parameters,
/// seed, objective value). Never interpreted by the partitioning code.
pub type Provenance = BTreeMap<String, String>;

/// A fixed, finite set of points in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    points: Vec<Vec<T>>,
    dim: usize,
    ids: Option<Vec<String>>,
}

impl<T: Scalar> Dataset<T> {
    pub fn new(points: Vec<Vec<T>>) -> Result<Self> {
        let dim = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| HprefError::arg("dataset must contain at least one point"))?;
        if dim == 0 {
            return Err(HprefError::arg("points must have dimension >= 1"));
        }
        if let Some(bad) = points.iter().position(|p| p.len() != dim) {
            return Err(HprefError::arg(format!(
                "point {bad} has dimension {} (expected {dim})",
                points[bad].len()
            )));
        }
        Ok(Dataset {
            points,
            dim,
            ids: None,
        })
    }

    pub fn with_ids(mut self, ids: Vec<String>) -> Result<Self> {
        if ids.len() != self.points.len() {
            return Err(HprefError::arg("identifier count must equal point count"));
        }
        let unique: HashSet<&String> = ids.iter().collect();
        if unique.len() != ids.len() {
            return Err(HprefError::arg("point identifiers must be unique"));
        }
        self.ids = Some(ids);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn ids(&self) -> Option<&[String]> {
        self.ids.as_deref()
    }
}

/// Squared Euclidean distance, summed in coordinate order.
pub fn squared_distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x - y;
            d * d
        })
        .fold(T::zero(), |acc, v| acc + v)
}

/// Cluster membership of a single point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Cluster(u32),
    Noise,
}

impl Label {
    pub fn is_noise(self) -> bool {
        matches!(self, Label::Noise)
    }

    /// On-disk integer code: cluster id, or -1 for noise.
    pub fn code(self) -> i64 {
        match self {
            Label::Cluster(c) => i64::from(c),
            Label::Noise => -1,
        }
    }

    pub fn from_code(code: i64) -> Option<Label> {
        match code {
            -1 => Some(Label::Noise),
            c if c >= 0 && c <= i64::from(u32::MAX) => Some(Label::Cluster(c as u32)),
            _ => None,
        }
    }
}

/// Renumbers non-noise labels to `0..K` in order of first appearance.
pub fn canonicalize(labels: &[Label]) -> Vec<Label> {
    let mut map: HashMap<u32, u32> = HashMap::new();
    labels
        .iter()
        .map(|&l| match l {
            Label::Noise => Label::Noise,
            Label::Cluster(c) => {
                let next = map.len() as u32;
                Label::Cluster(*map.entry(c).or_insert(next))
            }
        })
        .collect()
}

/// Pair feature on a raw label vector: `true` (bit 1) unless `i` and `j`
/// carry the same non-noise cluster id. On the diagonal this is `true`
/// exactly for noise points.
pub fn pair_bit(labels: &[Label], i: usize, j: usize) -> bool {
    match (labels[i], labels[j]) {
        (Label::Cluster(a), Label::Cluster(b)) => a != b,
        _ => true,
    }
}

/// One clustering of a dataset with `n_points` points. Labels are always
/// stored in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    labels: Vec<Label>,
    n_clusters: usize,
    provenance: Provenance,
}

impl Clustering {
    pub fn new(labels: Vec<Label>) -> Self {
        Self::with_provenance(labels, Provenance::new())
    }

    pub fn with_provenance(labels: Vec<Label>, provenance: Provenance) -> Self {
        let labels = canonicalize(&labels);
        let n_clusters = labels
            .iter()
            .filter_map(|l| match l {
                Label::Cluster(c) => Some(*c as usize + 1),
                Label::Noise => None,
            })
            .max()
            .unwrap_or(0);
        Clustering {
            labels,
            n_clusters,
            provenance,
        }
    }

    /// Builds a clustering from integer codes where `-1` is noise.
    pub fn from_codes(codes: &[i64]) -> Result<Self> {
        let labels = codes
            .iter()
            .map(|&c| {
                Label::from_code(c).ok_or_else(|| HprefError::arg(format!("invalid label {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(labels))
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn codes(&self) -> Vec<i64> {
        self.labels.iter().map(|l| l.code()).collect()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn n_clusters(&self) -> usize {
        self.n_clusters
    }

    pub fn noise_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_noise()).count()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn set_provenance(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.provenance.insert(key.into(), value.into());
    }

    /// Bit `M(C)_{(i,j)}`: `false` when both points are in the same cluster
    /// (or `i == j` is not noise), `true` otherwise.
    pub fn pair_feature(&self, i: usize, j: usize) -> Result<bool> {
        let n = self.labels.len();
        if i >= n || j >= n {
            return Err(HprefError::arg(format!(
                "pair ({i}, {j}) out of range for {n} points"
            )));
        }
        Ok(pair_bit(&self.labels, i, j))
    }
}

/// An ordered, non-empty set of clusterings of the same point set. The
/// order is the row order of the feature matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusteringSet {
    n_points: usize,
    clusterings: Vec<Clustering>,
}

impl ClusteringSet {
    pub fn new(clusterings: Vec<Clustering>) -> Result<Self> {
        let n_points = clusterings
            .first()
            .map(Clustering::len)
            .ok_or_else(|| HprefError::arg("a clustering set needs at least one clustering"))?;
        if n_points == 0 {
            return Err(HprefError::arg("clusterings must cover at least one point"));
        }
        if let Some(bad) = clusterings.iter().position(|c| c.len() != n_points) {
            return Err(HprefError::arg(format!(
                "clustering {bad} has {} labels, expected {n_points}",
                clusterings[bad].len()
            )));
        }
        Ok(ClusteringSet {
            n_points,
            clusterings,
        })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn len(&self) -> usize {
        self.clusterings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusterings.is_empty()
    }

    pub fn get(&self, r: usize) -> &Clustering {
        &self.clusterings[r]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clustering> {
        self.clusterings.iter()
    }

    pub fn clusterings(&self) -> &[Clustering] {
        &self.clusterings
    }

    /// Returns a new set with rows reordered so that row `r` of the result
    /// is row `order[r]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        if order.len() != self.len()
            || !order.iter().all(|&r| r < seen.len() && !std::mem::replace(&mut seen[r], true))
        {
            return Err(HprefError::arg("order is not a permutation of the rows"));
        }
        ClusteringSet::new(order.iter().map(|&r| self.clusterings[r].clone()).collect())
    }
}

impl<'a> IntoIterator for &'a ClusteringSet {
    type Item = &'a Clustering;
    type IntoIter = std::slice::Iter<'a, Clustering>;

    fn into_iter(self) -> Self::IntoIter {
        self.clusterings.iter()
    }
}
