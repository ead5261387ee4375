//! Cut partitions as CSV: one line per clustering with its class and
//! provenance.

use std::collections::BTreeSet;

use crate::clustering::ClusteringSet;
use crate::error::{HprefError, Result};
use crate::hpref::Partition;

/// Class id of every row, or an error if `partition` does not cover
/// `0..n` exactly once.
pub fn class_of(partition: &Partition, n: usize) -> Result<Vec<usize>> {
    let mut class = vec![usize::MAX; n];
    for (k, members) in partition.iter().enumerate() {
        for &m in members {
            if m >= n || class[m] != usize::MAX {
                return Err(HprefError::arg("not a partition of the clustering set"));
            }
            class[m] = k;
        }
    }
    if class.contains(&usize::MAX) {
        return Err(HprefError::arg("not a partition of the clustering set"));
    }
    Ok(class)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// `clustering,class` followed by one column per provenance key found in
/// `set` (sorted), when a set is given.
pub fn partition_csv(partition: &Partition, set: Option<&ClusteringSet>) -> Result<String> {
    let n = partition.iter().map(Vec::len).sum();
    if let Some(s) = set {
        if s.len() != n {
            return Err(HprefError::arg(format!(
                "partition covers {n} clusterings, set has {}",
                s.len()
            )));
        }
    }
    let class = class_of(partition, n)?;
    let keys: BTreeSet<&String> = set
        .map(|s| s.iter().flat_map(|c| c.provenance().keys()).collect())
        .unwrap_or_default();
    let mut out = String::from("clustering,class");
    for k in &keys {
        out.push(',');
        out.push_str(&csv_field(k));
    }
    out.push('\n');
    for (r, c) in class.iter().enumerate() {
        out.push_str(&format!("{r},{c}"));
        if let Some(s) = set {
            for k in &keys {
                out.push(',');
                out.push_str(&csv_field(s.get(r).provenance().get(*k).map_or("", String::as_str)));
            }
        }
        out.push('\n');
    }
    Ok(out)
}
