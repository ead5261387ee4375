//! Re-running HPREF on independently seeded pair samples and tallying the
//! leaf partitions obtained.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clustering::ClusteringSet;
use crate::error::{HprefError, Result};
use crate::hpref::{run_hpref, HprefConfig, Partition};
use crate::matrix::build_matrix;
use crate::pairs::{pair_count, PairSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityConfig {
    pub max_leaves: usize,
    pub n_pairs: usize,
    pub resamples: usize,
    pub seed: u64,
    pub include_diagonal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionCount {
    /// Classes sorted internally and ordered by smallest member.
    pub partition: Partition,
    pub count: usize,
    /// Sample seeds that produced this partition.
    pub seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub runs: usize,
    /// True when `n_pairs` covered every pair, so one FULL run was made.
    pub degenerate: bool,
    /// Per-run sample seeds, in run order.
    pub seeds: Vec<u64>,
    /// Distinct partitions, most frequent first (ties by first appearance).
    pub partitions: Vec<PartitionCount>,
}

impl StabilityReport {
    pub fn top(&self) -> &PartitionCount {
        &self.partitions[0]
    }

    /// Whether the most frequent partition reaches `threshold` (a fraction
    /// of runs in `[0, 1]`).
    pub fn reaches(&self, threshold: f64) -> bool {
        self.top().count as f64 >= threshold * self.runs as f64
    }

    pub fn frequency_of(&self, partition: &Partition) -> usize {
        let key = canonical_partition(partition.clone());
        self.partitions
            .iter()
            .find(|p| p.partition == key)
            .map_or(0, |p| p.count)
    }
}

pub fn canonical_partition(mut p: Partition) -> Partition {
    for class in &mut p {
        class.sort_unstable();
    }
    p.sort_by_key(|c| c.first().copied());
    p
}

/// Seeds of the individual samples, drawn from a stream keyed by `seed`.
pub fn resample_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.random()).collect()
}

pub fn resample_stability(set: &ClusteringSet, cfg: &StabilityConfig) -> Result<StabilityReport> {
    let hcfg = HprefConfig::new(cfg.max_leaves)?;
    if cfg.resamples == 0 {
        return Err(HprefError::arg("resample count must be >= 1"));
    }
    if cfg.n_pairs == 0 {
        return Err(HprefError::arg("pair count must be >= 1"));
    }
    let degenerate = cfg.n_pairs >= pair_count(set.n_points(), cfg.include_diagonal);
    let seeds = if degenerate {
        vec![cfg.seed]
    } else {
        resample_seeds(cfg.seed, cfg.resamples)
    };
    let results = seeds
        .par_iter()
        .map(|&seed| {
            let spec = if degenerate {
                PairSpec::Full
            } else {
                PairSpec::Sampled {
                    n: cfg.n_pairs,
                    seed,
                }
            };
            let fm = build_matrix(set, &spec.build(set.n_points(), cfg.include_diagonal)?)?;
            Ok(canonical_partition(run_hpref(&fm, &hcfg)?.leaf_partition()))
        })
        .collect::<Result<Vec<Partition>>>()?;

    let mut partitions: Vec<PartitionCount> = Vec::new();
    for (p, &seed) in results.into_iter().zip(&seeds) {
        match partitions.iter_mut().find(|e| e.partition == p) {
            Some(e) => {
                e.count += 1;
                e.seeds.push(seed);
            }
            None => partitions.push(PartitionCount {
                partition: p,
                count: 1,
                seeds: vec![seed],
            }),
        }
    }
    // stable sort keeps first-appearance order among equal counts
    partitions.sort_by(|a, b| b.count.cmp(&a.count));
    Ok(StabilityReport {
        runs: seeds.len(),
        degenerate,
        seeds,
        partitions,
    })
}
