use nalgebra::{DMatrix, RealField, SymmetricEigen};

use crate::error::{HprefError, Result};
use crate::matrix::FeatureMatrix;

/// Projection of the rows of a feature matrix onto its first two principal
/// components.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaProjection<T> {
    /// `s` rows of `[pc1, pc2]`.
    pub coords: Vec<[T; 2]>,
    pub explained_ratio: [T; 2],
}

impl<T: RealField + Copy> PcaProjection<T> {
    pub fn explained_total(&self) -> T {
        self.explained_ratio[0] + self.explained_ratio[1]
    }
}

/// Two-component PCA of the rows of `fm`, computed exactly from the
/// eigendecomposition of the `s x s` Gram matrix of the centered rows.
/// Each component's largest-magnitude projection is made positive.
pub fn pca2<T: RealField + Copy>(fm: &FeatureMatrix) -> Result<PcaProjection<T>> {
    let s = fm.n_rows();
    if s < 2 {
        return Err(HprefError::arg("PCA needs at least two rows"));
    }
    let n = fm.n_cols();
    let ones: Vec<usize> = (0..n).map(|c| fm.column(c).count_ones()).collect();

    // Gram[a][b] = <x_a - mu, x_b - mu>, accumulated column by column
    let mut gram = DMatrix::<T>::zeros(s, s);
    let mut centered = vec![T::zero(); s];
    for c in 0..n {
        let mean = nalgebra::convert::<f64, T>(ones[c] as f64 / s as f64);
        if ones[c] == 0 || ones[c] == s {
            continue;
        }
        for (r, v) in centered.iter_mut().enumerate() {
            let x = if fm.get(r, c) { T::one() } else { T::zero() };
            *v = x - mean;
        }
        for a in 0..s {
            let va = centered[a];
            for b in a..s {
                gram[(a, b)] += va * centered[b];
            }
        }
    }
    for a in 0..s {
        for b in 0..a {
            gram[(a, b)] = gram[(b, a)];
        }
    }

    let total = gram.trace();
    let eig = SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..s).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut coords = vec![[T::zero(); 2]; s];
    let mut ratio = [T::zero(); 2];
    for (k, &idx) in order.iter().take(2).enumerate() {
        let lambda = eig.eigenvalues[idx].max(T::zero());
        // eigenvalues at rounding level belong to the null space
        let floor = total * T::default_epsilon() * nalgebra::convert::<f64, T>(s as f64 * 16.0);
        if total <= T::zero() || lambda <= floor {
            continue;
        }
        ratio[k] = lambda / total;
        // projection of row r on component k = sqrt(lambda) * u_r
        let u = eig.eigenvectors.column(idx);
        let scale = lambda.sqrt();
        let pivot = (0..s)
            .max_by(|&a, &b| {
                u[a].abs()
                    .partial_cmp(&u[b].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(b.cmp(&a))
            })
            .expect("s >= 2");
        let sign = if u[pivot] < T::zero() { -T::one() } else { T::one() };
        for r in 0..s {
            coords[r][k] = sign * scale * u[r];
        }
    }
    Ok(PcaProjection {
        coords,
        explained_ratio: ratio,
    })
}
