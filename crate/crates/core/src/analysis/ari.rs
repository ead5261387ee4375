use std::collections::HashMap;

use crate::clustering::{Clustering, Label};
use crate::error::{HprefError, Result};

/// How noise points enter the contingency table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseHandling {
    /// Each noise point is its own one-point cluster.
    #[default]
    Singletons,
    /// All noise points of a clustering form one extra cluster, which is
    /// what passing the raw `-1` labels to a label-based ARI routine does.
    SharedCluster,
}

fn class_ids(labels: &[Label], noise: NoiseHandling) -> Vec<usize> {
    let base = labels
        .iter()
        .filter_map(|l| match l {
            Label::Cluster(c) => Some(*c as usize + 1),
            Label::Noise => None,
        })
        .max()
        .unwrap_or(0);
    let mut next = base;
    labels
        .iter()
        .map(|l| match (l, noise) {
            (Label::Cluster(c), _) => *c as usize,
            (Label::Noise, NoiseHandling::SharedCluster) => base,
            (Label::Noise, NoiseHandling::Singletons) => {
                next += 1;
                next
            }
        })
        .collect()
}

fn choose2(n: u64) -> f64 {
    (n * n.saturating_sub(1) / 2) as f64
}

/// Hubert–Arabie adjusted Rand index.
///
/// When the expected and maximum index coincide (both clusterings are all
/// singletons, or both a single cluster) the index is 1 if the clusterings
/// agree, 0 otherwise.
pub fn adjusted_rand(a: &Clustering, b: &Clustering, noise: NoiseHandling) -> Result<f64> {
    if a.len() != b.len() {
        return Err(HprefError::arg(format!(
            "clusterings cover {} and {} points",
            a.len(),
            b.len()
        )));
    }
    let (x, y) = (class_ids(a.labels(), noise), class_ids(b.labels(), noise));
    let mut table: HashMap<(usize, usize), u64> = HashMap::new();
    let mut rows: HashMap<usize, u64> = HashMap::new();
    let mut cols: HashMap<usize, u64> = HashMap::new();
    for (&p, &q) in x.iter().zip(&y) {
        *table.entry((p, q)).or_default() += 1;
        *rows.entry(p).or_default() += 1;
        *cols.entry(q).or_default() += 1;
    }
    let index: f64 = table.values().map(|&n| choose2(n)).sum();
    let sum_a: f64 = rows.values().map(|&n| choose2(n)).sum();
    let sum_b: f64 = cols.values().map(|&n| choose2(n)).sum();
    let total = choose2(x.len() as u64);
    let expected = if total > 0.0 { sum_a * sum_b / total } else { 0.0 };
    let max_index = (sum_a + sum_b) / 2.0;
    if max_index == expected {
        return Ok(if index == max_index { 1.0 } else { 0.0 });
    }
    Ok((index - expected) / (max_index - expected))
}
