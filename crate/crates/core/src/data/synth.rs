use rand::{Rng, RngCore};
use rand_distr::StandardNormal;

use crate::{rng_from_seed, HdError, Result};

/// Labelled real feature vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthDataset {
    pub features: usize,
    pub samples: Vec<(Vec<f64>, usize)>,
}

pub fn normal_vector<R: RngCore + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Unit-variance Gaussian blobs. Class `c` is centred on
/// `separation / sqrt(2) * e_c`, so every pair of class means is exactly
/// `separation` apart. Samples are interleaved by class.
pub fn synth_blobs(
    n_classes: usize,
    n_per_class: usize,
    features: usize,
    separation: f64,
    seed: u64,
) -> Result<SynthDataset> {
    if n_classes == 0 || features == 0 {
        return Err(HdError::invalid("need at least one class and one feature"));
    }
    if n_classes > features {
        return Err(HdError::invalid(format!(
            "{n_classes} equidistant class means need at least as many features, got {features}"
        )));
    }
    let offset = separation / std::f64::consts::SQRT_2;
    let mut rng = rng_from_seed(seed);
    let mut samples = Vec::with_capacity(n_classes * n_per_class);
    for _ in 0..n_per_class {
        for c in 0..n_classes {
            let mut x = normal_vector(&mut rng, features);
            x[c] += offset;
            samples.push((x, c));
        }
    }
    Ok(SynthDataset { features, samples })
}

/// Per-feature z-score fitted on one set and applied to others.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    mean: Vec<f64>,
    std: Vec<f64>,
}

impl Standardizer {
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self> {
        let first = rows.first().ok_or(HdError::Empty("feature rows"))?;
        let f = first.len();
        let n = rows.len() as f64;
        let mut mean = vec![0.0; f];
        for r in rows {
            if r.len() != f {
                return Err(HdError::LengthMismatch {
                    left: r.len(),
                    right: f,
                });
            }
            for (m, v) in mean.iter_mut().zip(r) {
                *m += v / n;
            }
        }
        let mut std = vec![0.0; f];
        for r in rows {
            for ((s, v), m) in std.iter_mut().zip(r).zip(&mean) {
                *s += (v - m).powi(2) / n;
            }
        }
        // constant columns pass through centred
        let std = std.into_iter().map(|v| if v > 0.0 { v.sqrt() } else { 1.0 }).collect();
        Ok(Self { mean, std })
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.mean)
            .zip(&self.std)
            .map(|((v, m), s)| (v - m) / s)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_by_seed() {
        assert_eq!(
            synth_blobs(3, 10, 4, 2.0, 5).unwrap(),
            synth_blobs(3, 10, 4, 2.0, 5).unwrap()
        );
        assert_ne!(
            synth_blobs(3, 10, 4, 2.0, 5).unwrap(),
            synth_blobs(3, 10, 4, 2.0, 6).unwrap()
        );
    }

    #[test]
    fn zero_separation_blind_to_label() {
        let ds = synth_blobs(2, 2000, 2, 0.0, 1).unwrap();
        let mean = |c: usize| {
            let xs: Vec<f64> = ds.samples.iter().filter(|s| s.1 == c).map(|s| s.0[0]).collect();
            xs.iter().sum::<f64>() / xs.len() as f64
        };
        assert!((mean(0) - mean(1)).abs() < 0.15);
    }

    #[test]
    fn class_means_at_separation() {
        let ds = synth_blobs(3, 4000, 5, 10.0, 2).unwrap();
        let centroid = |c: usize| {
            let mut m = vec![0.0; 5];
            for (x, _) in ds.samples.iter().filter(|s| s.1 == c) {
                for (a, b) in m.iter_mut().zip(x) {
                    *a += b / 4000.0;
                }
            }
            m
        };
        let (a, b) = (centroid(0), centroid(2));
        let d = a.iter().zip(&b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
        assert!((d - 10.0).abs() < 0.2, "{d}");
        assert!(synth_blobs(6, 1, 5, 1.0, 0).is_err());
    }

    #[test]
    fn standardizer() {
        let rows = vec![vec![1.0, 5.0], vec![3.0, 5.0]];
        let s = Standardizer::fit(&rows).unwrap();
        assert_eq!(s.apply(&[1.0, 5.0]), vec![-1.0, 0.0]);
        assert!(Standardizer::fit(&[]).is_err());
    }
}
