use crate::clustering::{squared_distance, Clustering, Dataset, Label};
use crate::error::{HprefError, Result};
use crate::scalar::Scalar;

/// DBSCAN parameters. `min_pts` counts the query point itself, so
/// `min_pts = 1` makes every point a core point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbscanParams<T> {
    pub eps: T,
    pub min_pts: usize,
}

impl<T: Scalar> DbscanParams<T> {
    pub fn new(eps: T, min_pts: usize) -> Result<Self> {
        if !(eps > T::zero()) {
            return Err(HprefError::arg("eps must be > 0"));
        }
        if min_pts == 0 {
            return Err(HprefError::arg("min_pts must be >= 1"));
        }
        Ok(DbscanParams { eps, min_pts })
    }
}

/// Closed-ball neighbourhoods: `j` is a neighbour of `i` iff
/// `|x_i - x_j|^2 <= eps^2`.
fn neighbourhoods<T: Scalar>(data: &Dataset<T>, eps: T) -> Vec<Vec<usize>> {
    let eps2 = eps * eps;
    let n = data.len();
    let mut nbrs = vec![Vec::new(); n];
    for i in 0..n {
        nbrs[i].push(i);
        for j in i + 1..n {
            if squared_distance(data.point(i), data.point(j)) <= eps2 {
                nbrs[i].push(j);
                nbrs[j].push(i);
            }
        }
    }
    nbrs
}

/// Density-based clustering with the Euclidean metric.
///
/// Clusters are grown from unlabelled core points in ascending index
/// order; a border point joins the first cluster that reaches it. Points
/// reached by no cluster are noise.
pub fn dbscan<T: Scalar>(data: &Dataset<T>, params: &DbscanParams<T>) -> Clustering {
    let n = data.len();
    let nbrs = neighbourhoods(data, params.eps);
    let core: Vec<bool> = nbrs.iter().map(|v| v.len() >= params.min_pts).collect();
    let mut labels = vec![Label::Noise; n];
    let mut next = 0u32;
    let mut stack = Vec::new();
    for seed in 0..n {
        if !core[seed] || labels[seed] != Label::Noise {
            continue;
        }
        labels[seed] = Label::Cluster(next);
        stack.push(seed);
        while let Some(p) = stack.pop() {
            if !core[p] {
                continue;
            }
            for &q in &nbrs[p] {
                if labels[q] == Label::Noise {
                    labels[q] = Label::Cluster(next);
                    stack.push(q);
                }
            }
        }
        next += 1;
    }
    Clustering::new(labels)
}

/// Core-point mask for the given parameters.
pub fn core_points<T: Scalar>(data: &Dataset<T>, params: &DbscanParams<T>) -> Vec<bool> {
    neighbourhoods(data, params.eps)
        .iter()
        .map(|v| v.len() >= params.min_pts)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> Dataset<f64> {
        Dataset::new(xs.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    #[test]
    fn core_border_noise() {
        let data = line(&[0.0, 0.1, 0.2, 5.0]);
        let cl = dbscan(&data, &DbscanParams::new(0.15, 2).unwrap());
        assert_eq!(cl.codes(), vec![0, 0, 0, -1]);
    }

    #[test]
    fn border_point_is_not_expanded() {
        // 0.1 is a border point; 0.2 is only reachable through it and
        // stays noise
        let data = line(&[-0.1, -0.05, 0.0, 0.1, 0.2]);
        let cl = dbscan(&data, &DbscanParams::new(0.101, 4).unwrap());
        assert_eq!(cl.codes(), vec![0, 0, 0, 0, -1]);
    }

    #[test]
    fn min_pts_one_gives_connected_components() {
        let data = line(&[0.0, 0.1, 1.0, 1.05, 3.0]);
        let cl = dbscan(&data, &DbscanParams::new(0.2, 1).unwrap());
        assert_eq!(cl.codes(), vec![0, 0, 1, 1, 2]);
        assert_eq!(cl.noise_count(), 0);
    }

    #[test]
    fn tiny_eps_is_all_noise() {
        let data = line(&[0.0, 1.0, 2.5, 4.0]);
        let cl = dbscan(&data, &DbscanParams::new(0.5, 2).unwrap());
        assert_eq!(cl.noise_count(), 4);
    }

    #[test]
    fn border_goes_to_first_cluster_in_scan_order() {
        // x=0.7 is a border point within eps of cores on both sides
        let data = line(&[0.0, 0.05, 0.1, 0.2, 0.7, 1.2, 1.3, 1.35, 1.4]);
        let p = DbscanParams::new(0.51, 4).unwrap();
        assert!(!core_points(&data, &p)[4]);
        let cl = dbscan(&data, &p);
        assert_eq!(cl.codes(), vec![0, 0, 0, 0, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn invalid_params() {
        assert!(DbscanParams::new(0.0, 1).is_err());
        assert!(DbscanParams::new(0.1, 0).is_err());
        assert!(DbscanParams::new(f64::NAN, 1).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let data = Dataset::new(vec![vec![0.0f32], vec![0.1], vec![0.2], vec![5.0]]).unwrap();
        let cl = dbscan(&data, &DbscanParams::new(0.15f32, 2).unwrap());
        assert_eq!(cl.codes(), vec![0, 0, 0, -1]);
    }

    #[test]
    fn core_and_noise_status_is_permutation_invariant() {
        let xs = [0.0, 0.05, 0.1, 2.0, 2.02, 2.04, 7.0, 9.0];
        let perm = [5, 2, 7, 0, 3, 6, 1, 4];
        let a = line(&xs);
        let b = line(&perm.iter().map(|&i| xs[i]).collect::<Vec<_>>());
        let p = DbscanParams::new(0.06, 2).unwrap();
        let (ca, cb) = (dbscan(&a, &p), dbscan(&b, &p));
        assert_eq!(ca.n_clusters(), cb.n_clusters());
        let (ka, kb) = (core_points(&a, &p), core_points(&b, &p));
        for (new, &old) in perm.iter().enumerate() {
            assert_eq!(kb[new], ka[old]);
            assert_eq!(cb.labels()[new].is_noise(), ca.labels()[old].is_noise());
        }
    }
}
