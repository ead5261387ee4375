//! The ultrametric on clusterings induced by a weighted dendrogram.

use crate::error::Result;
use crate::hpref::Dendrogram;

/// Symmetric `s x s` distance matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Ultrametric {
    size: usize,
    dist: Vec<f64>,
}

impl Ultrametric {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.dist[x * self.size + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.dist[x * self.size..(x + 1) * self.size]
    }

    /// Largest violation of `d(x,z) <= max(d(x,y), d(y,z))`, or 0.
    pub fn max_violation(&self, x: usize, y: usize, z: usize) -> f64 {
        (self.get(x, z) - self.get(x, y).max(self.get(y, z))).max(0.0)
    }
}

/// `d(x, y)` is the weight of the lowest node containing both `x` and `y`;
/// `d(x, x) = 0`.
pub fn induced_metric(d: &Dendrogram) -> Result<Ultrametric> {
    let s = d.n_rows;
    let mut dist = vec![0.0; s * s];
    for node in &d.nodes {
        let w = d.weight(node.id)?;
        match &node.split {
            Some(split) => {
                let left = &d.node(split.children[0]).members;
                let right = &d.node(split.children[1]).members;
                for &x in left {
                    for &y in right {
                        dist[x * s + y] = w;
                        dist[y * s + x] = w;
                    }
                }
            }
            None => {
                for &x in &node.members {
                    for &y in &node.members {
                        if x != y {
                            dist[x * s + y] = w;
                        }
                    }
                }
            }
        }
    }
    Ok(Ultrametric { size: s, dist })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::{Clustering, ClusteringSet};
    use crate::hpref::{assign_weights, run_hpref, HprefConfig};
    use crate::matrix::build_matrix;
    use crate::pairs::enumerate_pairs;

    fn dendrogram(codes: &[&[i64]], max_leaves: usize) -> Dendrogram {
        let set = ClusteringSet::new(
            codes
                .iter()
                .map(|c| Clustering::from_codes(c).unwrap())
                .collect(),
        )
        .unwrap();
        let fm = build_matrix(&set, &enumerate_pairs(set.n_points())).unwrap();
        assign_weights(run_hpref(&fm, &HprefConfig::new(max_leaves).unwrap()).unwrap())
    }

    #[test]
    fn tiny_distances() {
        let d = dendrogram(&[&[0, 0, 1, 1], &[0, 0, 1, -1], &[0, 0, 0, 0]], 3);
        let m = induced_metric(&d).unwrap();
        assert_eq!(m.get(0, 1), 4.0);
        assert_eq!(m.get(0, 2), 14.0);
        assert_eq!(m.get(1, 2), 14.0);
        for x in 0..3 {
            assert_eq!(m.get(x, x), 0.0);
        }
    }

    #[test]
    fn unsplit_leaf_members_sit_at_leaf_weight() {
        // rows 0 and 1 are identical, row 2 differs; with two leaves the
        // {0,1} leaf is never split and its weight is its own score (0)
        let d = dendrogram(&[&[0, 0, 1], &[0, 0, 1], &[0, 1, 1]], 2);
        let m = induced_metric(&d).unwrap();
        let leaf = d
            .nodes
            .iter()
            .find(|n| n.is_leaf() && n.members == vec![0, 1])
            .unwrap();
        assert_eq!(m.get(0, 1), d.weight(leaf.id).unwrap());
        assert_eq!(m.get(0, 1), 0.0);

        // with a budget of one leaf nothing is split: every distinct pair
        // sits at the root weight
        let d = dendrogram(&[&[0, 0, 1], &[0, 0, 1], &[0, 1, 1]], 1);
        let m = induced_metric(&d).unwrap();
        let w = d.weight(0).unwrap();
        assert!(w > 0.0);
        assert_eq!(m.get(0, 2), w);
        assert_eq!(m.get(0, 1), w);
        assert_eq!(m.get(2, 2), 0.0);
    }

    #[test]
    fn unweighted_dendrogram_is_rejected() {
        let set = ClusteringSet::new(vec![Clustering::from_codes(&[0, 1]).unwrap()]).unwrap();
        let fm = build_matrix(&set, &enumerate_pairs(2)).unwrap();
        let d = run_hpref(&fm, &HprefConfig::new(2).unwrap()).unwrap();
        assert!(induced_metric(&d).is_err());
    }
}
