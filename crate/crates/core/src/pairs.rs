//! Unordered point pairs (with repetition) that index the columns of the
//! feature matrix, either enumerated in full or sampled without replacement.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HprefError, Result};

/// An unordered pair of point indices, stored with `i <= j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pair(pub u32, pub u32);

impl Pair {
    pub fn new(a: usize, b: usize) -> Self {
        let (i, j) = if a <= b { (a, b) } else { (b, a) };
        Pair(i as u32, j as u32)
    }

    pub fn i(self) -> usize {
        self.0 as usize
    }

    pub fn j(self) -> usize {
        self.1 as usize
    }

    pub fn is_diagonal(self) -> bool {
        self.0 == self.1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SampleMode {
    Full,
    Sampled { seed: u64, requested: usize },
}

/// Compact description of a pair sample, enough to regenerate it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleDescriptor {
    #[serde(flatten)]
    pub mode: SampleMode,
    pub n_points: usize,
    pub n_pairs: usize,
    pub include_diagonal: bool,
}

impl SampleDescriptor {
    /// Rebuilds the exact pair list this descriptor was produced from.
    pub fn regenerate(&self) -> Result<PairSample> {
        match self.mode {
            SampleMode::Full if self.include_diagonal => Ok(enumerate_pairs(self.n_points)),
            SampleMode::Full => Ok(enumerate_offdiagonal(self.n_points)),
            SampleMode::Sampled { seed, requested } => {
                sample_pairs(self.n_points, requested, seed, self.include_diagonal)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSample {
    pairs: Vec<Pair>,
    n_points: usize,
    mode: SampleMode,
    include_diagonal: bool,
}

impl PairSample {
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn mode(&self) -> SampleMode {
        self.mode
    }

    pub fn is_full(&self) -> bool {
        self.mode == SampleMode::Full
    }

    pub fn include_diagonal(&self) -> bool {
        self.include_diagonal
    }

    pub fn descriptor(&self) -> SampleDescriptor {
        SampleDescriptor {
            mode: self.mode,
            n_points: self.n_points,
            n_pairs: self.pairs.len(),
            include_diagonal: self.include_diagonal,
        }
    }
}

/// Which pairs index the matrix columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSpec {
    Full,
    Sampled { n: usize, seed: u64 },
}

impl PairSpec {
    pub fn build(self, n_points: usize, include_diagonal: bool) -> Result<PairSample> {
        match self {
            PairSpec::Full if n_points == 0 => Err(HprefError::arg("dataset size must be >= 1")),
            PairSpec::Full => Ok(full(n_points, include_diagonal)),
            PairSpec::Sampled { n, seed } => sample_pairs(n_points, n, seed, include_diagonal),
        }
    }
}

/// Number of unordered pairs over `n` points, with or without the diagonal.
pub fn pair_count(n: usize, include_diagonal: bool) -> usize {
    if include_diagonal {
        n * (n + 1) / 2
    } else {
        n * n.saturating_sub(1) / 2
    }
}

/// All `N(N+1)/2` pairs `i <= j` in lexicographic order.
pub fn enumerate_pairs(n_points: usize) -> PairSample {
    full(n_points, true)
}

fn enumerate_offdiagonal(n_points: usize) -> PairSample {
    full(n_points, false)
}

fn full(n_points: usize, include_diagonal: bool) -> PairSample {
    let mut pairs = Vec::with_capacity(pair_count(n_points, include_diagonal));
    let skip = usize::from(!include_diagonal);
    for i in 0..n_points {
        for j in i + skip..n_points {
            pairs.push(Pair::new(i, j));
        }
    }
    PairSample {
        pairs,
        n_points,
        mode: SampleMode::Full,
        include_diagonal,
    }
}

/// Offset of the first pair with first coordinate `i` in lexicographic order.
fn row_start(n: usize, i: usize, include_diagonal: bool) -> usize {
    // rows have lengths n - i (with diagonal) or n - i - 1 (without)
    let row_len0 = if include_diagonal { n } else { n - 1 };
    i * row_len0 - i * i.saturating_sub(1) / 2
}

/// Maps a lexicographic rank back to its pair.
fn unrank(n: usize, rank: usize, include_diagonal: bool) -> Pair {
    let rows = if include_diagonal { n } else { n - 1 };
    let (mut lo, mut hi) = (0usize, rows - 1);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if row_start(n, mid, include_diagonal) <= rank {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let i = lo;
    let offset = rank - row_start(n, i, include_diagonal);
    let j = i + offset + usize::from(!include_diagonal);
    Pair::new(i, j)
}

/// Draws `n` distinct pairs uniformly without replacement, reproducibly from
/// `seed`, and returns them sorted. Requests at or above the number of
/// available pairs return the full enumeration instead.
pub fn sample_pairs(
    n_points: usize,
    n: usize,
    seed: u64,
    include_diagonal: bool,
) -> Result<PairSample> {
    if n == 0 {
        return Err(HprefError::arg("requested pair count must be >= 1"));
    }
    if n_points == 0 {
        return Err(HprefError::arg("dataset size must be >= 1"));
    }
    let available = pair_count(n_points, include_diagonal);
    if available == 0 {
        return Err(HprefError::arg(
            "a single point has no off-diagonal pairs to sample",
        ));
    }
    if n >= available {
        return Ok(full(n_points, include_diagonal));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = rand::seq::index::sample(&mut rng, available, n).into_vec();
    ranks.sort_unstable();
    let pairs = ranks
        .into_iter()
        .map(|r| unrank(n_points, r, include_diagonal))
        .collect();
    Ok(PairSample {
        pairs,
        n_points,
        mode: SampleMode::Sampled { seed, requested: n },
        include_diagonal,
    })
}
