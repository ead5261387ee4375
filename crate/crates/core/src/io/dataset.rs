//! Numeric CSV datasets and ground-truth label files.

use std::collections::HashMap;
use std::path::Path;

use crate::clustering::{Clustering, Dataset, Label};
use crate::error::{HprefError, Result};
use crate::scalar::Scalar;

/// Parses comma-separated numeric rows. A first line that does not parse
/// as numbers is taken as a header and skipped.
pub fn parse_dataset<T: Scalar>(text: &str) -> Result<Dataset<T>> {
    let mut points = Vec::new();
    for (no, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: std::result::Result<Vec<T>, _> =
            line.split(',').map(|f| f.trim().parse::<T>()).collect();
        match row {
            Ok(r) => {
                if let Some(first) = points.first().map(Vec::len) {
                    if first != r.len() {
                        return Err(HprefError::parse(
                            no,
                            format!("expected {first} fields, found {}", r.len()),
                        ));
                    }
                }
                if r.iter().any(|v| !v.is_finite()) {
                    return Err(HprefError::parse(no, "non-finite value"));
                }
                points.push(r);
            }
            Err(_) if points.is_empty() && no == first_content_line(text) => {}
            Err(_) => return Err(HprefError::parse(no, "non-numeric field")),
        }
    }
    Dataset::new(points)
}

fn first_content_line(text: &str) -> usize {
    text.lines()
        .position(|l| !l.trim().is_empty() && !l.trim().starts_with('#'))
        .map_or(0, |p| p + 1)
}

pub fn read_dataset<T: Scalar>(path: impl AsRef<Path>) -> Result<Dataset<T>> {
    parse_dataset(&std::fs::read_to_string(path)?)
}

/// One label per line. Distinct names become clusters in order of first
/// appearance; `-1` is read as noise.
pub fn parse_labels(text: &str) -> Result<Clustering> {
    let mut ids: HashMap<&str, u32> = HashMap::new();
    let mut labels = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if line == "-1" {
            labels.push(Label::Noise);
            continue;
        }
        let next = ids.len() as u32;
        labels.push(Label::Cluster(*ids.entry(line).or_insert(next)));
    }
    if labels.is_empty() {
        return Err(HprefError::parse(1, "label file is empty"));
    }
    Ok(Clustering::new(labels))
}

pub fn read_labels(path: impl AsRef<Path>) -> Result<Clustering> {
    parse_labels(&std::fs::read_to_string(path)?)
}
