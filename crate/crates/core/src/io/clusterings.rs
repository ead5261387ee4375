//! Line-oriented clustering-set files.
//!
//! ```text
//! hpref-clusterings 1
//! points 4
//! clusterings 2
//! @ {"algorithm":"dbscan","eps":"0.4","min_pts":"1"}
//! 0 0 1 1
//! @ {}
//! 0 0 1 -1
//! ```
//!
//! Each record is a provenance line (`@` followed by a JSON object with
//! string values) and a label line of `points` integers, `-1` for noise.

use std::fmt::Write as _;
use std::path::Path;

use crate::clustering::{Clustering, ClusteringSet, Provenance};
use crate::error::{HprefError, Result};

const MAGIC: &str = "hpref-clusterings";
const VERSION: u32 = 1;

pub fn clusterings_to_string(set: &ClusteringSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC} {VERSION}");
    let _ = writeln!(out, "points {}", set.n_points());
    let _ = writeln!(out, "clusterings {}", set.len());
    for c in set {
        let prov = serde_json::to_string(c.provenance()).expect("string map serializes");
        let _ = writeln!(out, "@ {prov}");
        let row: Vec<String> = c.codes().iter().map(i64::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

fn header_value(line: Option<(usize, &str)>, key: &str) -> Result<usize> {
    let (no, text) = line.ok_or_else(|| HprefError::parse(0, format!("missing '{key}' header")))?;
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => v
            .parse()
            .map_err(|_| HprefError::parse(no, format!("'{key}' expects a non-negative integer"))),
        _ => Err(HprefError::parse(no, format!("expected '{key} <count>'"))),
    }
}

pub fn parse_clusterings(text: &str) -> Result<ClusteringSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l == format!("{MAGIC} {VERSION}") => {}
        Some((no, _)) => {
            return Err(HprefError::parse(
                no,
                format!("expected '{MAGIC} {VERSION}' header"),
            ))
        }
        None => return Err(HprefError::parse(1, "empty file")),
    }
    let n_points = header_value(lines.next(), "points")?;
    let count = header_value(lines.next(), "clusterings")?;
    if count == 0 {
        return Err(HprefError::arg("the clustering set is empty"));
    }

    let mut clusterings = Vec::with_capacity(count);
    while let Some((no, line)) = lines.next() {
        let prov_text = line
            .strip_prefix('@')
            .ok_or_else(|| HprefError::parse(no, "expected '@' provenance line"))?;
        let provenance: Provenance = serde_json::from_str(prov_text.trim())
            .map_err(|e| HprefError::parse(no, format!("bad provenance: {e}")))?;
        let (row_no, row) = lines
            .next()
            .ok_or_else(|| HprefError::parse(no + 1, "missing label row"))?;
        let codes = row
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .ok()
                    .filter(|&v| v >= -1 && v <= i64::from(u32::MAX))
                    .ok_or_else(|| HprefError::parse(row_no, format!("invalid label '{tok}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        if codes.len() != n_points {
            return Err(HprefError::parse(
                row_no,
                format!(
                    "record {} has {} labels, expected {n_points}",
                    clusterings.len(),
                    codes.len()
                ),
            ));
        }
        let mut c = Clustering::from_codes(&codes).map_err(|e| HprefError::parse(row_no, e.to_string()))?;
        for (k, v) in provenance {
            c.set_provenance(k, v);
        }
        clusterings.push(c);
    }
    if clusterings.len() != count {
        return Err(HprefError::parse(
            3,
            format!("header declares {count} clusterings, found {}", clusterings.len()),
        ));
    }
    ClusteringSet::new(clusterings).map_err(|e| HprefError::parse(3, e.to_string()))
}

pub fn write_clusterings(set: &ClusteringSet, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, clusterings_to_string(set))?;
    Ok(())
}

pub fn read_clusterings(path: impl AsRef<Path>) -> Result<ClusteringSet> {
    parse_clusterings(&std::fs::read_to_string(path)?)
}
