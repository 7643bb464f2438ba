use anyhow::Result;
use hdseed::encode::ItemMemory;
use hdseed::seqgen::{centered_l2_discrepancy, SequenceFamily};
use hdseed::Hypervector;

use crate::report::{round6, OrthogonalityStats};

/// Mean and max `|cosine_bipolar|` over all distinct pairs.
pub fn orthogonality(hvs: &[Hypervector]) -> Result<OrthogonalityStats> {
    let mut sum = 0.0;
    let mut max: f64 = 0.0;
    let mut pairs = 0usize;
    let mut identical = 0usize;
    for i in 0..hvs.len() {
        for j in (i + 1)..hvs.len() {
            let c = hvs[i].cosine_bipolar(&hvs[j])?.abs();
            sum += c;
            max = max.max(c);
            pairs += 1;
            identical += usize::from(c == 1.0 && hvs[i] == hvs[j]);
        }
    }
    Ok(OrthogonalityStats {
        vectors: hvs.len(),
        mean_abs_cosine: round6(if pairs > 0 { sum / pairs as f64 } else { 0.0 }),
        max_abs_cosine: round6(max),
        identical_pairs: identical,
    })
}

pub fn report_orthogonality(memory: &ItemMemory) -> Result<OrthogonalityStats> {
    orthogonality(memory.hypervectors())
}

/// Centered L2 discrepancy of the first `n` points of the family's first
/// `d` coordinates.
pub fn report_discrepancy(family: &SequenceFamily, n: usize, d: usize) -> Result<f64> {
    Ok(round6(centered_l2_discrepancy(&family.point_set(n, d)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hdseed::seqgen::BinaryCodeFamily;

    #[test]
    fn identical_vectors() {
        let a = Hypervector::ones(64);
        let s = orthogonality(&[a.clone(), a]).unwrap();
        assert_eq!(s.max_abs_cosine, 1.0);
        assert_eq!(s.identical_pairs, 1);
    }

    #[test]
    fn hadamard_memory_exactly_orthogonal() {
        let hvs = BinaryCodeFamily::Hadamard.hypervectors(100, 1024).unwrap();
        let s = orthogonality(&hvs).unwrap();
        assert_eq!(s.max_abs_cosine, 0.0);
    }

    #[test]
    fn sobol_beats_random_discrepancy() {
        let sobol = report_discrepancy(&SequenceFamily::Sobol, 1024, 2).unwrap();
        let random = report_discrepancy(&SequenceFamily::Random { seed: 1 }, 1024, 2).unwrap();
        assert!(sobol < random, "{sobol} vs {random}");
    }
}
