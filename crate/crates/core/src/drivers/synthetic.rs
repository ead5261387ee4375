//! A planted two-regime clustering set standing in for repeated k-means
//! and k-means++ runs on a large dataset.
//!
//! The dataset is a grid of Gaussian blobs. Runs of the `kmeans++` regime
//! recover the blobs. Runs of the `kmeans` regime all merge the first
//! `merged_blobs` blobs into one cluster (the planted separating feature)
//! and fall into a handful of failure modes, each merging one pair of the
//! remaining blobs. Every run additionally reassigns a few random points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::clustering::{squared_distance, Clustering, ClusteringSet, Dataset, Label, Provenance};
use crate::error::{HprefError, Result};
use crate::hpref::Partition;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct TwoRegimeConfig {
    pub n_blobs: usize,
    pub blob_size: usize,
    /// Blobs `0..merged_blobs` form one cluster in every uniform-start run.
    pub merged_blobs: usize,
    /// Failure modes of the uniform-start regime: run count and the pair of
    /// blobs merged in that mode.
    pub uniform_modes: Vec<(usize, (usize, usize))>,
    pub plusplus_runs: usize,
    /// Points reassigned at random in each run.
    pub jitter: usize,
    pub seed: u64,
}

impl Default for TwoRegimeConfig {
    /// 25 blobs of 400 points (10,000 points), 20 + 20 runs, failure modes
    /// of sizes 4, 13, 1, 1, 1.
    fn default() -> Self {
        TwoRegimeConfig {
            n_blobs: 25,
            blob_size: 400,
            merged_blobs: 17,
            uniform_modes: vec![
                (4, (17, 18)),
                (13, (19, 20)),
                (1, (21, 22)),
                (1, (23, 24)),
                (1, (17, 24)),
            ],
            plusplus_runs: 20,
            jitter: 1,
            seed: 1999,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlantedSet<T> {
    pub dataset: Dataset<T>,
    pub set: ClusteringSet,
    /// The intended classes: one per uniform-start mode, then the
    /// k-means++ runs.
    pub classes: Partition,
}

fn blob_labels(cfg: &TwoRegimeConfig, merge: impl Fn(usize) -> usize) -> Vec<Label> {
    (0..cfg.n_blobs * cfg.blob_size)
        .map(|i| Label::Cluster(merge(i / cfg.blob_size) as u32))
        .collect()
}

fn jitter(labels: &mut [Label], cfg: &TwoRegimeConfig, rng: &mut ChaCha8Rng) {
    let lo = cfg.merged_blobs * cfg.blob_size;
    let hi = cfg.n_blobs * cfg.blob_size;
    for _ in 0..cfg.jitter {
        let p = rng.random_range(lo..hi);
        let q = rng.random_range(lo..hi);
        labels[p] = labels[q];
    }
}

fn centroid_phi<T: Scalar>(data: &Dataset<T>, labels: &[Label]) -> T {
    let k = labels
        .iter()
        .filter_map(|l| match l {
            Label::Cluster(c) => Some(*c as usize + 1),
            Label::Noise => None,
        })
        .max()
        .unwrap_or(0);
    let mut sums = vec![vec![T::zero(); data.dim()]; k];
    let mut counts = vec![0usize; k];
    for (i, l) in labels.iter().enumerate() {
        if let Label::Cluster(c) = l {
            counts[*c as usize] += 1;
            for (s, &x) in sums[*c as usize].iter_mut().zip(data.point(i)) {
                *s = *s + x;
            }
        }
    }
    let centers: Vec<Vec<T>> = sums
        .into_iter()
        .zip(&counts)
        .map(|(s, &n)| s.into_iter().map(|v| v / T::of_usize(n.max(1))).collect())
        .collect();
    labels
        .iter()
        .enumerate()
        .filter_map(|(i, l)| match l {
            Label::Cluster(c) => Some(squared_distance(data.point(i), &centers[*c as usize])),
            Label::Noise => None,
        })
        .fold(T::zero(), |a, b| a + b)
}

pub fn two_regime_set<T: Scalar>(cfg: &TwoRegimeConfig) -> Result<PlantedSet<T>> {
    if cfg.merged_blobs >= cfg.n_blobs || cfg.blob_size == 0 {
        return Err(HprefError::arg("invalid blob layout"));
    }
    if cfg
        .uniform_modes
        .iter()
        .any(|&(_, (a, b))| a == b || a >= cfg.n_blobs || b >= cfg.n_blobs)
    {
        return Err(HprefError::arg("failure modes must merge two distinct blobs"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let side = (cfg.n_blobs as f64).sqrt().ceil() as usize;
    let noise = Normal::new(0.0, 1.0).expect("unit normal");
    let mut points = Vec::with_capacity(cfg.n_blobs * cfg.blob_size);
    for b in 0..cfg.n_blobs {
        let (cx, cy) = ((b % side) as f64 * 10.0, (b / side) as f64 * 10.0);
        for _ in 0..cfg.blob_size {
            points.push(vec![
                T::of(cx + noise.sample(&mut rng)),
                T::of(cy + noise.sample(&mut rng)),
            ]);
        }
    }
    let dataset = Dataset::new(points)?;

    let mut clusterings = Vec::new();
    let mut classes = Vec::new();
    let mut push = |labels: Vec<Label>, algorithm: &str, mode: String, run: usize| {
        let mut prov = Provenance::new();
        prov.insert("algorithm".into(), algorithm.into());
        prov.insert("mode".into(), mode);
        prov.insert("run".into(), run.to_string());
        prov.insert("k".into(), cfg.n_blobs.to_string());
        prov.insert(
            "phi".into(),
            format!("{:e}", centroid_phi(&dataset, &labels).as_f64()),
        );
        clusterings.push(Clustering::with_provenance(labels, prov));
        clusterings.len() - 1
    };

    let mut run = 0;
    for (m, &(count, (a, b))) in cfg.uniform_modes.iter().enumerate() {
        let mut class = Vec::new();
        for _ in 0..count {
            let mut labels = blob_labels(cfg, |blob| {
                if blob < cfg.merged_blobs {
                    0
                } else if blob == b {
                    a
                } else {
                    blob
                }
            });
            jitter(&mut labels, cfg, &mut rng);
            class.push(push(labels, "kmeans", format!("uniform-{m}"), run));
            run += 1;
        }
        classes.push(class);
    }
    let mut class = Vec::new();
    for _ in 0..cfg.plusplus_runs {
        let mut labels = blob_labels(cfg, |blob| blob);
        jitter(&mut labels, cfg, &mut rng);
        class.push(push(labels, "kmeans++", "plusplus".into(), run));
        run += 1;
    }
    classes.push(class);

    Ok(PlantedSet {
        dataset,
        set: ClusteringSet::new(clusterings)?,
        classes,
    })
}
