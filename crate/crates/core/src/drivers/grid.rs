use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dbscan::{dbscan, DbscanParams};
use super::kmeans::{lloyd, KmeansInit, KmeansParams};
use crate::clustering::{Clustering, ClusteringSet, Dataset, Provenance};
use crate::error::{HprefError, Result};
use crate::scalar::Scalar;

/// Values of `eps`: either an explicit list or the multiples
/// `step * 1, ..., step * count`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EpsValues {
    List(Vec<f64>),
    Multiples { step: f64, count: usize },
}

impl EpsValues {
    pub fn values(&self) -> Vec<f64> {
        match self {
            EpsValues::List(v) => v.clone(),
            EpsValues::Multiples { step, count } => {
                (1..=*count).map(|i| step * i as f64).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DbscanGrid {
    pub eps: EpsValues,
    pub min_pts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KmeansRuns {
    pub k: usize,
    #[serde(default = "default_plusplus")]
    pub plusplus: bool,
    pub runs: usize,
    /// Seed of run `r` is `seed + r`.
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_plusplus() -> bool {
    false
}

fn default_max_iterations() -> usize {
    300
}

fn default_tolerance() -> f64 {
    1e-4
}

/// A list of DBSCAN grids and k-means run batches, executed in order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    #[serde(default)]
    pub dbscan: Vec<DbscanGrid>,
    #[serde(default)]
    pub kmeans: Vec<KmeansRuns>,
}

impl GridSpec {
    /// The DBSCAN grid `eps in {0.05 i : 1 <= i <= 20}` by `min_pts in 1..=10`.
    pub fn iris() -> Self {
        GridSpec {
            dbscan: vec![DbscanGrid {
                eps: EpsValues::Multiples {
                    step: 0.05,
                    count: 20,
                },
                min_pts: (1..=10).collect(),
            }],
            kmeans: vec![],
        }
    }

    /// `runs` uniform-start runs followed by `runs` k-means++ runs.
    pub fn kmeans_pair(k: usize, runs: usize, seed: u64) -> Self {
        let batch = |plusplus, seed| KmeansRuns {
            k,
            plusplus,
            runs,
            seed,
            max_iterations: default_max_iterations(),
            tolerance: default_tolerance(),
        };
        GridSpec {
            dbscan: vec![],
            kmeans: vec![batch(false, seed), batch(true, seed + runs as u64)],
        }
    }

    fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for g in &self.dbscan {
            for eps in g.eps.values() {
                for &min_pts in &g.min_pts {
                    cells.push(Cell::Dbscan { eps, min_pts });
                }
            }
        }
        for b in &self.kmeans {
            for r in 0..b.runs {
                cells.push(Cell::Kmeans {
                    batch: b.clone(),
                    seed: b.seed + r as u64,
                });
            }
        }
        cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells().len()
    }
}

enum Cell {
    Dbscan { eps: f64, min_pts: usize },
    Kmeans { batch: KmeansRuns, seed: u64 },
}

/// Formats a parameter with at most 10 decimals so that `0.05 * 3` prints
/// as `0.15`.
pub fn format_param(v: f64) -> String {
    let rounded = (v * 1e10).round() / 1e10;
    format!("{rounded}")
}

fn run_cell<T: Scalar>(data: &Dataset<T>, cell: &Cell) -> Result<Clustering> {
    let mut prov = Provenance::new();
    let labels = match cell {
        Cell::Dbscan { eps, min_pts } => {
            let params = DbscanParams::new(T::of(*eps), *min_pts)?;
            prov.insert("algorithm".into(), "dbscan".into());
            prov.insert("eps".into(), format_param(*eps));
            prov.insert("min_pts".into(), min_pts.to_string());
            dbscan(data, &params).labels().to_vec()
        }
        Cell::Kmeans { batch, seed } => {
            let init = if batch.plusplus {
                KmeansInit::PlusPlus
            } else {
                KmeansInit::Uniform
            };
            let params = KmeansParams {
                k: batch.k,
                init,
                seed: *seed,
                max_iterations: batch.max_iterations,
                tolerance: T::of(batch.tolerance),
            };
            let res = lloyd(data, &params)?;
            prov.insert("algorithm".into(), init.name().into());
            prov.insert("k".into(), batch.k.to_string());
            prov.insert("seed".into(), seed.to_string());
            prov.insert("phi".into(), format!("{:e}", res.phi.as_f64()));
            prov.insert("iterations".into(), res.iterations.to_string());
            res.clustering.labels().to_vec()
        }
    };
    Ok(Clustering::with_provenance(labels, prov))
}

/// Runs every cell of `spec` on `data`. Cells run concurrently; the result
/// keeps grid order (eps-major, then `min_pts`; k-means batches by run).
pub fn run_grid<T: Scalar>(data: &Dataset<T>, spec: &GridSpec) -> Result<ClusteringSet> {
    let cells = spec.cells();
    if cells.is_empty() {
        return Err(HprefError::arg("grid specification has no cells"));
    }
    let clusterings = cells
        .par_iter()
        .map(|cell| run_cell(data, cell))
        .collect::<Result<Vec<_>>>()?;
    ClusteringSet::new(clusterings)
}
