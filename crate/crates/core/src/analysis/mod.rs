//! External validation and summaries: adjusted Rand index, per-class
//! statistics and a two-component PCA of the pair-encoding matrix.

pub mod ari;
pub mod pca;
pub mod stats;

pub use ari::{adjusted_rand, NoiseHandling};
pub use pca::{pca2, PcaProjection};
pub use stats::{class_stats, stats_csv, stats_rows, ClassStats, STATS_HEADER};
