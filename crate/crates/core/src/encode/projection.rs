use std::f64::consts::TAU;

use rand::seq::index::sample;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{rng_from_seed, HdError, Hypervector, Result};

/// Dense Gaussian projection `B` (D rows by F columns) with optional phases.
#[derive(Debug, Clone)]
pub struct ProjectionMatrix {
    dim: usize,
    features: usize,
    weights: Vec<f64>,
    phases: Option<Vec<f64>>,
}

impl ProjectionMatrix {
    /// Entries from N(0, 1); phases, if requested, from U[0, 2pi).
    pub fn gaussian(dim: usize, features: usize, seed: u64, with_phases: bool) -> Result<Self> {
        if dim == 0 || features == 0 {
            return Err(HdError::invalid("projection needs non-zero shape"));
        }
        let mut rng = rng_from_seed(seed);
        let weights = (0..dim * features)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        let phases = with_phases.then(|| (0..dim).map(|_| rng.random::<f64>() * TAU).collect());
        Ok(Self {
            dim,
            features,
            weights,
            phases,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn features(&self) -> usize {
        self.features
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.features..(i + 1) * self.features]
    }

    pub fn phases(&self) -> Option<&[f64]> {
        self.phases.as_deref()
    }

    /// `B x`, one entry per row.
    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.features {
            return Err(HdError::LengthMismatch {
                left: x.len(),
                right: self.features,
            });
        }
        Ok(self
            .weights
            .chunks_exact(self.features)
            .map(|row| row.iter().zip(x).map(|(w, v)| w * v).sum())
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbfVariant {
    /// bit `i` is `cos(B_i x) >= 0`
    Cos,
    /// bit `i` is `cos(B_i x + c_i) * sin(B_i x) >= 0`
    CosSin,
}

pub fn rbf_encode(features: &[f64], proj: &ProjectionMatrix, variant: RbfVariant) -> Result<Hypervector> {
    let z = proj.project(features)?;
    let bits: Vec<bool> = match variant {
        RbfVariant::Cos => z.iter().map(|&t| t.cos() >= 0.0).collect(),
        RbfVariant::CosSin => {
            let phases = proj
                .phases()
                .ok_or_else(|| HdError::invalid("cos*sin variant needs phase offsets"))?;
            z.iter()
                .zip(phases)
                .map(|(&t, &c)| (t + c).cos() * t.sin() >= 0.0)
                .collect()
        }
    };
    Ok(Hypervector::from_bits(&bits))
}

/// Fraction of non-zero entries per row, in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparsityParams {
    s: f64,
}

impl SparsityParams {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(HdError::invalid(format!("sparsity {s} outside (0, 1]")));
        }
        Ok(Self { s })
    }

    pub fn fraction(&self) -> f64 {
        self.s
    }

    pub fn nonzeros(&self, features: usize) -> usize {
        (self.s * features as f64).round() as usize
    }
}

/// Ternary random-indexing matrix stored as per-row `(column, +1 | -1)` lists.
#[derive(Debug, Clone)]
pub struct SparseProjection {
    features: usize,
    rows: Vec<Vec<(usize, i8)>>,
}

impl SparseProjection {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn features(&self) -> usize {
        self.features
    }

    pub fn row(&self, i: usize) -> &[(usize, i8)] {
        &self.rows[i]
    }

    /// Bit `i` is `sum_j r_ij x_j >= 0`.
    pub fn encode(&self, x: &[f64]) -> Result<Hypervector> {
        if x.len() != self.features {
            return Err(HdError::LengthMismatch {
                left: x.len(),
                right: self.features,
            });
        }
        Ok(Hypervector::from_fn(self.rows.len(), |i| {
            self.rows[i].iter().map(|&(j, s)| f64::from(s) * x[j]).sum::<f64>() >= 0.0
        }))
    }
}

/// Each row gets `round(s * F)` non-zeros at random columns, `ceil(k/2)`
/// of them `+1` and the rest `-1`.
pub fn random_projection_sparse(
    features: usize,
    dim: usize,
    sparsity: SparsityParams,
    seed: u64,
) -> Result<SparseProjection> {
    if features == 0 || dim == 0 {
        return Err(HdError::invalid("projection needs non-zero shape"));
    }
    let k = sparsity.nonzeros(features);
    let mut rng = rng_from_seed(seed);
    let rows = (0..dim)
        .map(|_| {
            let mut cols: Vec<usize> = sample(&mut rng, features, k).into_vec();
            cols.sort_unstable();
            let mut signs: Vec<i8> = (0..k).map(|t| if t < k.div_ceil(2) { 1 } else { -1 }).collect();
            // random sign placement
            for t in (1..k).rev() {
                signs.swap(t, rng.random_range(0..=t));
            }
            cols.into_iter().zip(signs).collect()
        })
        .collect();
    Ok(SparseProjection { features, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::normal_vector;

    #[test]
    fn zero_features_all_ones() {
        let p = ProjectionMatrix::gaussian(512, 8, 1, false).unwrap();
        assert_eq!(
            rbf_encode(&[0.0; 8], &p, RbfVariant::Cos).unwrap(),
            Hypervector::ones(512)
        );
        assert!(rbf_encode(&[0.0; 7], &p, RbfVariant::Cos).is_err());
        assert!(rbf_encode(&[0.0; 8], &p, RbfVariant::CosSin).is_err());
    }

    #[test]
    fn rbf_deterministic() {
        let x = [0.3, -1.2, 0.8, 2.0];
        let a = rbf_encode(
            &x,
            &ProjectionMatrix::gaussian(256, 4, 7, true).unwrap(),
            RbfVariant::CosSin,
        )
        .unwrap();
        let b = rbf_encode(
            &x,
            &ProjectionMatrix::gaussian(256, 4, 7, true).unwrap(),
            RbfVariant::CosSin,
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rbf_similarity_falls_with_distance() {
        // bucket 100 random pairs by distance; mean similarity must decrease
        let p = ProjectionMatrix::gaussian(4096, 4, 3, false).unwrap();
        let mut rng = rng_from_seed(11);
        let mut pairs: Vec<(f64, f64)> = (0..100)
            .map(|t| {
                let x = normal_vector(&mut rng, 4);
                let scale = 0.02 * t as f64;
                let dir = normal_vector(&mut rng, 4);
                let y: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + scale * d).collect();
                let dist = x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
                let hx = rbf_encode(&x, &p, RbfVariant::Cos).unwrap();
                let hy = rbf_encode(&y, &p, RbfVariant::Cos).unwrap();
                (dist, hx.similarity_hamming(&hy).unwrap())
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let means: Vec<f64> = pairs
            .chunks(25)
            .map(|c| c.iter().map(|p| p.1).sum::<f64>() / c.len() as f64)
            .collect();
        assert!(means.windows(2).all(|w| w[0] > w[1]), "{means:?}");
    }

    #[test]
    fn sparse_rows() {
        let s = SparsityParams::new(0.25).unwrap();
        let m = random_projection_sparse(50, 100, s, 2).unwrap();
        for i in 0..100 {
            let row = m.row(i);
            assert_eq!(row.len(), 13);
            assert_eq!(row.iter().filter(|e| e.1 == 1).count(), 7);
        }
        let dense = random_projection_sparse(10, 4, SparsityParams::new(1.0).unwrap(), 0).unwrap();
        assert!((0..4).all(|i| dense.row(i).len() == 10));
        let again = random_projection_sparse(50, 100, s, 2).unwrap();
        assert_eq!(again.row(42), m.row(42));
        assert!(SparsityParams::new(0.0).is_err());
        assert_eq!(m.encode(&[0.5; 50]).unwrap().dim(), 100);
    }
}
