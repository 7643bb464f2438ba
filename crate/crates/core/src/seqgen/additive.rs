//! Additive-recurrence sequences: Weyl and R2.

use std::f64::consts::PI;

use super::radical::BELOW_ONE;
use crate::{HdError, Result};

/// Fractional part of pi.
pub const WEYL_PI: f64 = PI - 3.0;
/// Silver ratio minus two, `sqrt(2) - 1`.
pub const WEYL_SILVER: f64 = std::f64::consts::SQRT_2 - 1.0;

/// `frac(index * beta)`.
pub fn weyl(index: u64, beta: f64) -> Result<f64> {
    if !beta.is_finite() {
        return Err(HdError::invalid(format!("Weyl increment must be finite, got {beta}")));
    }
    let step = beta.rem_euclid(1.0);
    Ok((index as f64 * step).rem_euclid(1.0).min(BELOW_ONE))
}

/// The plastic number, the real root of `x^3 = x + 1` (Cardano's formula).
pub fn plastic_constant() -> f64 {
    let s = 69f64.sqrt();
    ((9.0 + s) / 18.0).cbrt() + ((9.0 - s) / 18.0).cbrt()
}

/// R2 coordinate `dim` in {1, 2}: `frac(index / rho^dim)`.
pub fn r2(dim: usize, index: u64) -> Result<f64> {
    if !(1..=2).contains(&dim) {
        return Err(HdError::UnsupportedDimension { requested: dim, max: 2 });
    }
    let alpha = 1.0 / plastic_constant().powi(dim as i32);
    Ok((index as f64 * alpha).rem_euclid(1.0).min(BELOW_ONE))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl(0, WEYL_SILVER).unwrap(), 0.0);
        assert!((weyl(2, WEYL_SILVER).unwrap() - 0.828427).abs() < 1e-6);
        assert!((weyl(1, WEYL_PI).unwrap() - 0.14159265358979312).abs() < 1e-15);
        assert!(weyl(1, f64::NAN).is_err());
    }

    #[test]
    fn r2_examples() {
        assert_eq!(r2(1, 0).unwrap(), 0.0);
        assert!((r2(1, 1).unwrap() - 0.7548777).abs() < 1e-7);
        assert!((r2(2, 1).unwrap() - 0.5698403).abs() < 1e-7);
        assert!(r2(3, 1).is_err());
    }
}
