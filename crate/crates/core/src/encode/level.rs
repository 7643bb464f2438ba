use crate::seqgen::SequenceSource;
use crate::{HdError, Hypervector, Result};

/// Comparison encoding of a scalar: bit `j` is `value > value(src, j)`.
pub fn level_hv_from_sequence(value: f64, dim: usize, src: &SequenceSource) -> Result<Hypervector> {
    LevelEncoder::new(src, dim)?.encode(value)
}

/// Caches the first `dim` values of a source so repeated scalar encodings
/// skip regenerating the sequence.
#[derive(Debug, Clone)]
pub struct LevelEncoder {
    thresholds: Vec<f64>,
}

impl LevelEncoder {
    pub fn new(src: &SequenceSource, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(HdError::invalid("dimension must be >= 1"));
        }
        Ok(Self {
            thresholds: src.sample(dim)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.thresholds.len()
    }

    pub fn encode(&self, value: f64) -> Result<Hypervector> {
        if value.is_nan() {
            return Err(HdError::invalid("level value is NaN"));
        }
        Ok(Hypervector::from_fn(self.dim(), |j| value > self.thresholds[j]))
    }

    /// Encodings of `k / (steps - 1)` for `k` in `0..steps`, e.g. 256 entries
    /// for 8-bit pixels.
    pub fn table(&self, steps: usize) -> Result<Vec<Hypervector>> {
        if steps < 2 {
            return Err(HdError::invalid(format!("level table needs >= 2 steps, got {steps}")));
        }
        let top = (steps - 1) as f64;
        (0..steps).map(|k| self.encode(k as f64 / top)).collect()
    }
}

/// The first `round(value * D)` bits set.
pub fn thermometer_encode(value: f64, dim: usize) -> Result<Hypervector> {
    if !(0.0..=1.0).contains(&value) {
        return Err(HdError::invalid(format!("thermometer value {value} outside [0, 1]")));
    }
    let cut = (value * dim as f64).round() as usize;
    Ok(Hypervector::from_fn(dim, |j| j < cut))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SOBOL1: SequenceSource = SequenceSource::Sobol { dim: 1 };

    #[test]
    fn extremes() {
        assert_eq!(
            level_hv_from_sequence(0.0, 1024, &SOBOL1).unwrap(),
            Hypervector::zeros(1024)
        );
        assert_eq!(
            level_hv_from_sequence(1.0, 1024, &SOBOL1).unwrap(),
            Hypervector::ones(1024)
        );
    }

    #[test]
    fn half_weight_exact() {
        assert_eq!(level_hv_from_sequence(0.5, 1024, &SOBOL1).unwrap().weight(), 512);
    }

    #[test]
    fn nearby_values_correlate() {
        let a = level_hv_from_sequence(0.5, 1024, &SOBOL1).unwrap();
        let b = level_hv_from_sequence(0.6, 1024, &SOBOL1).unwrap();
        assert!(a.similarity_hamming(&b).unwrap() >= 0.85);
    }

    #[test]
    fn table_matches_encode() {
        let enc = LevelEncoder::new(&SequenceSource::Halton { dim: 2 }, 300).unwrap();
        let t = enc.table(256).unwrap();
        assert_eq!(t[128], enc.encode(128.0 / 255.0).unwrap());
        assert!(enc.encode(f64::NAN).is_err());
    }

    #[test]
    fn thermometer_prefix() {
        let d = 1000;
        assert_eq!(thermometer_encode(0.0, d).unwrap(), Hypervector::zeros(d));
        assert_eq!(thermometer_encode(1.0, d).unwrap(), Hypervector::ones(d));
        let a = thermometer_encode(0.3, d).unwrap();
        let b = thermometer_encode(0.7, d).unwrap();
        assert_eq!(a.hamming(&b).unwrap(), 400);
        assert!(thermometer_encode(1.5, d).is_err());
    }
}
