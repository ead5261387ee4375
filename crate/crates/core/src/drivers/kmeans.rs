use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clustering::{squared_distance, Clustering, Dataset, Label};
use crate::error::{HprefError, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KmeansInit {
    /// `k` distinct data points chosen uniformly.
    Uniform,
    /// D² weighting.
    PlusPlus,
}

impl KmeansInit {
    pub fn name(self) -> &'static str {
        match self {
            KmeansInit::Uniform => "kmeans",
            KmeansInit::PlusPlus => "kmeans++",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KmeansParams<T> {
    pub k: usize,
    pub init: KmeansInit,
    pub seed: u64,
    pub max_iterations: usize,
    /// Stop once the summed squared center movement drops below this.
    pub tolerance: T,
}

impl<T: Scalar> KmeansParams<T> {
    pub fn new(k: usize, init: KmeansInit, seed: u64) -> Self {
        KmeansParams {
            k,
            init,
            seed,
            max_iterations: 300,
            tolerance: T::of(1e-4),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KmeansResult<T> {
    pub clustering: Clustering,
    pub centers: Vec<Vec<T>>,
    /// Sum of squared distances from each point to its nearest center.
    pub phi: T,
    pub iterations: usize,
    /// Objective after each assignment step.
    pub phi_trace: Vec<T>,
}

/// Index of the nearest center (lowest index on ties) and the squared
/// distance to it.
fn nearest<T: Scalar>(p: &[T], centers: &[Vec<T>]) -> (usize, T) {
    let mut best = (0, T::infinity());
    for (c, center) in centers.iter().enumerate() {
        let d = squared_distance(p, center);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// The k-means objective of `centers` on `data`.
pub fn phi<T: Scalar>(data: &Dataset<T>, centers: &[Vec<T>]) -> T {
    data.points()
        .iter()
        .map(|p| nearest(p, centers).1)
        .fold(T::zero(), |a, b| a + b)
}

fn check_k<T: Scalar>(data: &Dataset<T>, k: usize) -> Result<()> {
    if k == 0 || k > data.len() {
        return Err(HprefError::arg(format!(
            "k = {k} must lie in 1..={}",
            data.len()
        )));
    }
    Ok(())
}

fn uniform_init<T: Scalar>(data: &Dataset<T>, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<T>> {
    rand::seq::index::sample(rng, data.len(), k)
        .into_iter()
        .map(|i| data.point(i).to_vec())
        .collect()
}

/// Draws an index with probability proportional to `weights`. Zero-weight
/// entries are never returned while some weight is positive.
fn weighted_draw<T: Scalar>(weights: &[T], rng: &mut ChaCha8Rng) -> Option<usize> {
    let total = weights.iter().fold(T::zero(), |a, &b| a + b);
    if !(total > T::zero()) {
        return None;
    }
    let target = T::of(rng.random::<f64>()) * total;
    let mut acc = T::zero();
    let mut last_positive = None;
    for (i, &w) in weights.iter().enumerate() {
        if w > T::zero() {
            acc = acc + w;
            last_positive = Some(i);
            if acc > target {
                return Some(i);
            }
        }
    }
    // rounding can leave target just above the accumulated sum
    last_positive
}

fn plusplus_with<T: Scalar>(data: &Dataset<T>, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<T>> {
    let n = data.len();
    let first = rng.random_range(0..n);
    let mut chosen = vec![first];
    let mut d2: Vec<T> = data
        .points()
        .iter()
        .map(|p| squared_distance(p, data.point(first)))
        .collect();
    while chosen.len() < k {
        let next = match weighted_draw(&d2, rng) {
            Some(i) => i,
            None => {
                // every point coincides with a chosen center
                let rest: Vec<usize> = (0..n).filter(|i| !chosen.contains(i)).collect();
                rest[rng.random_range(0..rest.len())]
            }
        };
        chosen.push(next);
        for (i, p) in data.points().iter().enumerate() {
            let d = squared_distance(p, data.point(next));
            if d < d2[i] {
                d2[i] = d;
            }
        }
    }
    chosen.into_iter().map(|i| data.point(i).to_vec()).collect()
}

/// k-means++ seeding: the first center is uniform over the data, each
/// further center is drawn with probability proportional to the squared
/// distance to the nearest center chosen so far.
pub fn plusplus_init<T: Scalar>(data: &Dataset<T>, k: usize, seed: u64) -> Result<Vec<Vec<T>>> {
    check_k(data, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(plusplus_with(data, k, &mut rng))
}

/// Lloyd's algorithm from the configured initialization.
pub fn lloyd<T: Scalar>(data: &Dataset<T>, params: &KmeansParams<T>) -> Result<KmeansResult<T>> {
    check_k(data, params.k)?;
    let k = params.k;
    let dim = data.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut centers = match params.init {
        KmeansInit::Uniform => uniform_init(data, k, &mut rng),
        KmeansInit::PlusPlus => plusplus_with(data, k, &mut rng),
    };

    let mut assign = vec![0usize; data.len()];
    let mut dists = vec![T::zero(); data.len()];
    let mut phi_trace = Vec::new();
    let mut iterations = 0;
    loop {
        for (i, p) in data.points().iter().enumerate() {
            let (c, d) = nearest(p, &centers);
            assign[i] = c;
            dists[i] = d;
        }
        phi_trace.push(dists.iter().fold(T::zero(), |a, &b| a + b));
        if iterations == params.max_iterations {
            break;
        }
        iterations += 1;

        let mut sums = vec![vec![T::zero(); dim]; k];
        let mut counts = vec![0usize; k];
        for (i, p) in data.points().iter().enumerate() {
            counts[assign[i]] += 1;
            for (s, &x) in sums[assign[i]].iter_mut().zip(p) {
                *s = *s + x;
            }
        }
        let mut updated: Vec<Vec<T>> = sums
            .into_iter()
            .zip(&counts)
            .zip(&centers)
            .map(|((s, &n), old)| {
                if n == 0 {
                    old.clone()
                } else {
                    let n = T::of_usize(n);
                    s.into_iter().map(|v| v / n).collect()
                }
            })
            .collect();
        // empty clusters move to the point farthest from its own center
        let mut taken = vec![false; data.len()];
        for c in (0..k).filter(|&c| counts[c] == 0) {
            let far = (0..data.len())
                .filter(|&i| !taken[i])
                .max_by(|&a, &b| {
                    dists[a]
                        .partial_cmp(&dists[b])
                        .unwrap_or(std::cmp::Ordering::Equal)
                        .then(b.cmp(&a))
                })
                .expect("k <= N leaves a candidate");
            taken[far] = true;
            updated[c] = data.point(far).to_vec();
        }
        let shift = centers
            .iter()
            .zip(&updated)
            .map(|(a, b)| squared_distance(a, b))
            .fold(T::zero(), |a, b| a + b);
        centers = updated;
        if shift < params.tolerance {
            // final assignment against the settled centers
            for (i, p) in data.points().iter().enumerate() {
                let (c, d) = nearest(p, &centers);
                assign[i] = c;
                dists[i] = d;
            }
            phi_trace.push(dists.iter().fold(T::zero(), |a, &b| a + b));
            break;
        }
    }

    let phi = *phi_trace.last().expect("at least one assignment");
    let clustering = Clustering::new(assign.iter().map(|&c| Label::Cluster(c as u32)).collect());
    Ok(KmeansResult {
        clustering,
        centers,
        phi,
        iterations,
        phi_trace,
    })
}
