//! Grouping of identical columns of a row-restricted feature matrix.
//!
//! For a set of rows `R`, every column of `M(S)` is projected onto `R` and
//! columns with the same projected pattern are counted together. The
//! patterns are keyed into a trie whose edges are labelled by whole 64-bit
//! words of the packed pattern, so inserting a column costs one lookup per
//! word and the total work is `O(n * |R|)`.

use std::collections::HashMap;

use crate::error::{HprefError, Result};
use crate::matrix::{words_for, BitPattern, FeatureMatrix};

/// One class of identical restricted columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnGroup {
    pub pattern: BitPattern,
    /// Column indices, ascending.
    pub columns: Vec<usize>,
}

impl ColumnGroup {
    pub fn multiplicity(&self) -> usize {
        self.columns.len()
    }

    pub fn is_nonconstant(&self) -> bool {
        self.pattern.is_nonconstant()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnGroups {
    rows: Vec<usize>,
    /// Groups in order of their lowest column index.
    groups: Vec<ColumnGroup>,
    nonconstant: usize,
    top: Option<usize>,
}

impl ColumnGroups {
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn groups(&self) -> &[ColumnGroup] {
        &self.groups
    }

    /// `c`: number of columns that are non-constant on the restriction.
    pub fn nonconstant_count(&self) -> usize {
        self.nonconstant
    }

    /// The most repeated non-constant pattern; ties go to the group whose
    /// lowest column index is smallest.
    pub fn top(&self) -> Option<&ColumnGroup> {
        self.top.map(|t| &self.groups[t])
    }

    /// `m`, or 0 when every column is constant.
    pub fn top_multiplicity(&self) -> usize {
        self.top().map_or(0, ColumnGroup::multiplicity)
    }

    pub fn total_columns(&self) -> usize {
        self.groups.iter().map(ColumnGroup::multiplicity).sum()
    }

    pub fn find(&self, pattern: &BitPattern) -> Option<&ColumnGroup> {
        self.groups.iter().find(|g| &g.pattern == pattern)
    }
}

/// Trie over sequences of 64-bit words. Interior edges live in one hash map
/// keyed by `(node, word)`; the edge for the final word points at a group.
#[derive(Default)]
struct PatternTrie {
    edges: HashMap<(u32, u64), u32>,
    terminals: HashMap<(u32, u64), u32>,
    nodes: u32,
}

impl PatternTrie {
    /// Returns the group id for `key`, or `None` if the key is new, in
    /// which case `fresh` is recorded as its id.
    fn insert(&mut self, key: &[u64], fresh: u32) -> Option<u32> {
        let (last, prefix) = key.split_last().expect("non-empty key");
        let mut node = 0u32;
        for &w in prefix {
            node = match self.edges.get(&(node, w)) {
                Some(&child) => child,
                None => {
                    self.nodes += 1;
                    let child = self.nodes;
                    self.edges.insert((node, w), child);
                    child
                }
            };
        }
        match self.terminals.get(&(node, *last)) {
            Some(&g) => Some(g),
            None => {
                self.terminals.insert((node, *last), fresh);
                None
            }
        }
    }
}

/// Groups the columns of `fm` by their pattern restricted to `rows`.
///
/// `rows` must be non-empty and in range; it is sorted and deduplicated
/// before use, and bit `k` of each group pattern refers to the `k`-th
/// smallest row.
pub fn group_columns(fm: &FeatureMatrix, rows: &[usize]) -> Result<ColumnGroups> {
    if rows.is_empty() {
        return Err(HprefError::arg("row restriction must be non-empty"));
    }
    let mut rows = rows.to_vec();
    rows.sort_unstable();
    rows.dedup();
    if let Some(&bad) = rows.iter().find(|&&r| r >= fm.n_rows()) {
        return Err(HprefError::arg(format!(
            "row {bad} out of range for {} rows",
            fm.n_rows()
        )));
    }

    let width = rows.len();
    let key_words = words_for(width);
    let all_rows = width == fm.n_rows();
    let mut key = vec![0u64; key_words];
    let mut trie = PatternTrie::default();
    let mut groups: Vec<ColumnGroup> = Vec::new();

    for c in 0..fm.n_cols() {
        let col = fm.column_words(c);
        if all_rows {
            key.copy_from_slice(&col[..fm.words_per_col()]);
        } else {
            key.iter_mut().for_each(|w| *w = 0);
            for (k, &r) in rows.iter().enumerate() {
                let bit = (col[r >> 6] >> (r & 63)) & 1;
                key[k >> 6] |= bit << (k & 63);
            }
        }
        let fresh = groups.len() as u32;
        match trie.insert(&key, fresh) {
            Some(g) => groups[g as usize].columns.push(c),
            None => groups.push(ColumnGroup {
                pattern: BitPattern::from_words(width, key.clone()),
                columns: vec![c],
            }),
        }
    }

    let mut nonconstant = 0;
    let mut top: Option<usize> = None;
    for (g, group) in groups.iter().enumerate() {
        if !group.is_nonconstant() {
            continue;
        }
        nonconstant += group.multiplicity();
        // groups are ordered by first column, so strict `>` keeps the
        // lowest-indexed group among equal multiplicities
        if top.is_none_or(|t| group.multiplicity() > groups[t].multiplicity()) {
            top = Some(g);
        }
    }

    Ok(ColumnGroups {
        rows,
        groups,
        nonconstant,
        top,
    })
}
