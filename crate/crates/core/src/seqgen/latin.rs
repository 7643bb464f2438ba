use rand::seq::SliceRandom;
use rand::Rng;

use super::radical::BELOW_ONE;
use super::PointSet;
use crate::{derive_seed, rng_from_seed, HdError, Result};

/// One stratified column: a random permutation of `{(j + u_j) / n}` with
/// `u_j ~ U[0, 1)`. Column `k` of a seeded hypercube has its own stream.
pub(crate) fn latin_column(n: usize, dim: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng_from_seed(derive_seed(seed, dim as u64));
    let mut strata: Vec<usize> = (0..n).collect();
    strata.shuffle(&mut rng);
    strata
        .into_iter()
        .map(|j| ((j as f64 + rng.random::<f64>()) / n as f64).min(BELOW_ONE))
        .collect()
}

/// `n` points in `dims` dimensions, exactly one per stratum in every axis.
pub fn latin_hypercube(n: usize, dims: usize, seed: u64) -> Result<PointSet> {
    if n == 0 || dims == 0 {
        return Err(HdError::invalid("Latin hypercube needs n >= 1 and dims >= 1"));
    }
    let columns: Vec<Vec<f64>> = (1..=dims).map(|k| latin_column(n, k, seed)).collect();
    PointSet::from_columns(&columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_stratum_hit_once() {
        let ps = latin_hypercube(37, 3, 11).unwrap();
        for k in 0..3 {
            let mut strata: Vec<usize> = ps.column(k).iter().map(|x| (x * 37.0) as usize).collect();
            strata.sort_unstable();
            assert_eq!(strata, (0..37).collect::<Vec<_>>());
        }
    }

    #[test]
    fn seeded_determinism() {
        assert_eq!(latin_hypercube(50, 2, 3).unwrap(), latin_hypercube(50, 2, 3).unwrap());
        assert_ne!(latin_hypercube(50, 2, 3).unwrap(), latin_hypercube(50, 2, 4).unwrap());
    }

    #[test]
    fn n4_histogram() {
        let ps = latin_hypercube(4, 2, 99).unwrap();
        for k in 0..2 {
            let mut hist = [0; 4];
            for x in ps.column(k) {
                hist[(x * 4.0) as usize] += 1;
            }
            assert_eq!(hist, [1, 1, 1, 1]);
        }
    }
}
