//! The binary matrix `M(S)` restricted to a pair sample, stored column-major
//! as packed bit-columns of length `s`.

use std::fmt;

use rayon::prelude::*;

use crate::clustering::{pair_bit, ClusteringSet};
use crate::error::{HprefError, Result};
use crate::pairs::PairSample;

const WORD: usize = 64;

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A fixed-length bit vector packed into `u64` words, low bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitPattern {
    len: usize,
    words: Vec<u64>,
}

impl BitPattern {
    pub fn zeros(len: usize) -> Self {
        BitPattern {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD] |= 1 << (len % WORD);
            }
            len += 1;
        }
        BitPattern { len, words }
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        BitPattern { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len, "bit {k} out of range for pattern of length {}", self.len);
        (self.words[k / WORD] >> (k % WORD)) & 1 == 1
    }

    pub fn set(&mut self, k: usize, value: bool) {
        assert!(k < self.len);
        let mask = 1u64 << (k % WORD);
        if value {
            self.words[k / WORD] |= mask;
        } else {
            self.words[k / WORD] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Contains both a 0 and a 1.
    pub fn is_nonconstant(&self) -> bool {
        let ones = self.count_ones();
        ones > 0 && ones < self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|k| self.get(k))
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Parses a string of `'0'`/`'1'` characters.
    pub fn parse(text: &str) -> Option<Self> {
        text.chars()
            .map(|ch| match ch {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(BitPattern::from_bits)
    }
}

impl fmt::Display for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `s x n` binary matrix: row `r` is the encoding of clustering `r`, column
/// `c` is pair `c` of the sample. Bit 1 means "not clustered together".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureMatrix {
    n_rows: usize,
    words_per_col: usize,
    data: Vec<u64>,
    sample: PairSample,
}

impl FeatureMatrix {
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.sample.len()
    }

    pub fn sample(&self) -> &PairSample {
        &self.sample
    }

    pub(crate) fn words_per_col(&self) -> usize {
        self.words_per_col
    }

    /// Packed words of column `c`.
    pub fn column_words(&self, c: usize) -> &[u64] {
        &self.data[c * self.words_per_col..(c + 1) * self.words_per_col]
    }

    pub fn column(&self, c: usize) -> BitPattern {
        BitPattern::from_words(self.n_rows, self.column_words(c).to_vec())
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.column_words(c)[r / WORD] >> (r % WORD)) & 1 == 1
    }

    pub fn row(&self, r: usize) -> BitPattern {
        BitPattern::from_bits((0..self.n_cols()).map(|c| self.get(r, c)))
    }

    /// Row `r` as a dense 0/1 vector.
    pub fn row_bits(&self, r: usize) -> Vec<u8> {
        (0..self.n_cols()).map(|c| self.get(r, c) as u8).collect()
    }
}

/// Builds `M(S)` over the sampled pairs.
pub fn build_matrix(set: &ClusteringSet, sample: &PairSample) -> Result<FeatureMatrix> {
    if sample.n_points() != set.n_points() {
        return Err(HprefError::arg(format!(
            "pair sample is over {} points but clusterings cover {}",
            sample.n_points(),
            set.n_points()
        )));
    }
    let n_rows = set.len();
    let words_per_col = words_for(n_rows);
    let mut data = vec![0u64; words_per_col * sample.len()];
    let rows: Vec<_> = set.iter().map(|c| c.labels()).collect();
    data.par_chunks_mut(words_per_col)
        .zip(sample.pairs().par_iter())
        .for_each(|(col, pair)| {
            for (r, labels) in rows.iter().enumerate() {
                if pair_bit(labels, pair.i(), pair.j()) {
                    col[r / WORD] |= 1 << (r % WORD);
                }
            }
        });
    Ok(FeatureMatrix {
        n_rows,
        words_per_col,
        data,
        sample: sample.clone(),
    })
}
