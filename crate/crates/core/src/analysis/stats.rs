use crate::error::{HprefError, Result};
use crate::scalar::Scalar;

/// Summary of one statistic over the members of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassStats<T> {
    pub class: usize,
    pub count: usize,
    pub mean: T,
    pub min: T,
    pub max: T,
    /// Population standard deviation; `None` for single-member classes.
    pub std_dev: Option<T>,
}

/// Per-class mean, min, max and population standard deviation of
/// `values[r]` over the rows `r` of each class, in partition order.
pub fn class_stats<T: Scalar>(classes: &[Vec<usize>], values: &[T]) -> Result<Vec<ClassStats<T>>> {
    classes
        .iter()
        .enumerate()
        .map(|(class, members)| {
            if members.is_empty() {
                return Err(HprefError::arg(format!("class {class} is empty")));
            }
            let vals = members
                .iter()
                .map(|&r| {
                    values.get(r).copied().ok_or_else(|| {
                        HprefError::arg(format!("no value for member {r} of class {class}"))
                    })
                })
                .collect::<Result<Vec<T>>>()?;
            let n = T::of_usize(vals.len());
            let mean = vals.iter().copied().sum::<T>() / n;
            let min = vals.iter().copied().fold(T::infinity(), T::min);
            let max = vals.iter().copied().fold(T::neg_infinity(), T::max);
            let std_dev = (vals.len() > 1).then(|| {
                let var = vals
                    .iter()
                    .map(|&v| (v - mean) * (v - mean))
                    .sum::<T>()
                    / n;
                var.sqrt()
            });
            Ok(ClassStats {
                class,
                count: vals.len(),
                mean: mean.max(min).min(max),
                min,
                max,
                std_dev,
            })
        })
        .collect()
}

pub const STATS_HEADER: &str = "statistic,class,size,mean,min,max,std\n";

/// CSV rows `statistic,class,size,mean,min,max,std`, one per class,
/// without the header line ([`STATS_HEADER`]).
pub fn stats_rows<T: Scalar>(statistic: &str, stats: &[ClassStats<T>]) -> String {
    let mut out = String::new();
    for s in stats {
        let std = s.std_dev.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{statistic},{},{},{},{},{},{}\n",
            s.class, s.count, s.mean, s.min, s.max, std
        ));
    }
    out
}

/// A full table for one statistic.
pub fn stats_csv<T: Scalar>(statistic: &str, stats: &[ClassStats<T>]) -> String {
    format!("{STATS_HEADER}{}", stats_rows(statistic, stats))
}
