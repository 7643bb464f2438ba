//! Radical-inverse sequences: Van der Corput, Halton, Hammersley, Faure.

use std::sync::OnceLock;

use crate::{HdError, Result};

/// Largest `f64` strictly below 1.
pub(crate) const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// `num / den` as a float in `[0, 1)`, one rounding step.
pub(crate) fn ratio_to_unit(num: u128, den: u128) -> f64 {
    debug_assert!(num < den);
    let x = num as f64 / den as f64;
    x.min(BELOW_ONE)
}

/// Radical inverse of `index` in `base`: the base-`b` digits of `index`
/// mirrored around the radix point.
///
/// Digits are accumulated as an exact rational and divided once, so e.g.
/// `vdc(209, 7)` is the correctly rounded `305/343`.
pub fn vdc(index: u64, base: u32) -> Result<f64> {
    if base < 2 {
        return Err(HdError::invalid(format!("VDC base must be >= 2, got {base}")));
    }
    let (num, den) = radical_inverse_ratio(index, base as u128);
    Ok(ratio_to_unit(num, den))
}

fn radical_inverse_ratio(index: u64, base: u128) -> (u128, u128) {
    let mut i = index as u128;
    let (mut num, mut den) = (0u128, 1u128);
    while i > 0 {
        num = num * base + i % base;
        den *= base;
        i /= base;
    }
    (num, den)
}

const PRIME_TABLE_LEN: usize = 10_000;

/// The first 10,000 primes.
pub fn primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        // the 10,000th prime is 104,729
        let limit = 104_730usize;
        let mut composite = vec![false; limit];
        let mut out = Vec::with_capacity(PRIME_TABLE_LEN);
        for n in 2..limit {
            if composite[n] {
                continue;
            }
            out.push(n as u32);
            let mut m = n * n;
            while m < limit {
                composite[m] = true;
                m += n;
            }
        }
        out.truncate(PRIME_TABLE_LEN);
        out
    })
}

/// The `k`-th prime, 1-based (`nth_prime(1) == 2`).
pub fn nth_prime(k: usize) -> Result<u32> {
    if k == 0 || k > PRIME_TABLE_LEN {
        return Err(HdError::UnsupportedDimension {
            requested: k,
            max: PRIME_TABLE_LEN,
        });
    }
    Ok(primes()[k - 1])
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u32) -> u32 {
    let mut p = n.max(2);
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// Halton coordinate `dim` (1-based): radical inverse in the `dim`-th prime.
pub fn halton(dim: usize, index: u64) -> Result<f64> {
    vdc(index, nth_prime(dim)?)
}

/// Hammersley coordinate of point `index` out of `n`: the first coordinate is
/// `index / n`, coordinate `k > 1` is the radical inverse in the `(k-1)`-th
/// prime.
pub fn hammersley(dim: usize, index: u64, n: u64) -> Result<f64> {
    if n == 0 || index >= n {
        return Err(HdError::invalid(format!(
            "Hammersley index {index} outside point count {n}"
        )));
    }
    match dim {
        0 => Err(HdError::UnsupportedDimension {
            requested: 0,
            max: PRIME_TABLE_LEN + 1,
        }),
        1 => Ok(ratio_to_unit(index as u128, n as u128)),
        k => vdc(index, nth_prime(k - 1)?),
    }
}

/// Faure coordinate `dim` (1-based) in prime base `omega`.
///
/// Coordinate 1 is the base-`omega` radical inverse; coordinate `k + 1`
/// scrambles the digits of coordinate `k` with the upper-triangular Pascal
/// matrix mod `omega`, i.e. coordinate `c + 1` applies `P^c` where
/// `(P^c)[i][j] = C(j, i) * c^(j - i) mod omega`.
pub fn faure(dim: usize, index: u64, omega: u32) -> Result<f64> {
    if !is_prime(omega) {
        return Err(HdError::invalid(format!("Faure base {omega} is not prime")));
    }
    if dim == 0 || dim > omega as usize {
        return Err(HdError::UnsupportedDimension {
            requested: dim,
            max: omega as usize,
        });
    }
    let b = omega as u128;
    let mut digits = Vec::new();
    let mut i = index as u128;
    while i > 0 {
        digits.push(i % b);
        i /= b;
    }
    let c = (dim - 1) as u128 % b;
    let n = digits.len();

    // binomials mod b up to row n-1
    let mut pascal = vec![vec![0u128; n.max(1)]; n.max(1)];
    for j in 0..n {
        pascal[j][0] = 1;
        for k in 1..=j {
            pascal[j][k] = (pascal[j - 1][k - 1] + if k < j { pascal[j - 1][k] } else { 0 }) % b;
        }
    }
    let mut c_pow = vec![1u128; n.max(1)];
    for k in 1..n {
        c_pow[k] = c_pow[k - 1] * c % b;
    }

    let (mut num, mut den) = (0u128, 1u128);
    for row in 0..n {
        let mut y = 0u128;
        for (j, &a) in digits.iter().enumerate().skip(row) {
            y = (y + pascal[j][row] * c_pow[j - row] % b * a) % b;
        }
        num = num * b + y;
        den *= b;
    }
    Ok(ratio_to_unit(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vdc_worked_example_base7() {
        assert_eq!(vdc(209, 7).unwrap(), 305.0 / 343.0);
    }

    #[test]
    fn vdc_small_values() {
        assert_eq!(vdc(0, 5).unwrap(), 0.0);
        assert_eq!(vdc(1, 2).unwrap(), 0.5);
        assert_eq!(vdc(6, 2).unwrap(), 0.375);
        assert!(vdc(3, 1).is_err());
        assert!(vdc(3, 0).is_err());
    }

    #[test]
    fn vdc_stays_below_one() {
        assert!(vdc(u64::MAX, 2).unwrap() < 1.0);
        assert!(vdc(u64::MAX, 3).unwrap() < 1.0);
    }

    #[test]
    fn vdc_base2_permutes_dyadics() {
        for k in 1..=12u32 {
            let n = 1u64 << k;
            let mut seen = vec![false; n as usize];
            for i in 0..n {
                let x = vdc(i, 2).unwrap() * n as f64;
                assert_eq!(x.fract(), 0.0);
                let slot = x as usize;
                assert!(!seen[slot], "k={k} repeated {slot}");
                seen[slot] = true;
            }
        }
    }

    #[test]
    fn prime_table() {
        assert_eq!(&primes()[..6], &[2, 3, 5, 7, 11, 13]);
        assert_eq!(primes()[9_999], 104_729);
        assert_eq!(nth_prime(6).unwrap(), 13);
        assert!(nth_prime(0).is_err());
        assert_eq!(next_prime(24), 29);
    }

    #[test]
    fn halton_examples() {
        for i in 0..200 {
            assert_eq!(halton(1, i).unwrap(), vdc(i, 2).unwrap());
        }
        assert_eq!(halton(2, 1).unwrap(), 1.0 / 3.0);
        assert_eq!(halton(6, 100).unwrap(), vdc(100, 13).unwrap());
    }

    #[test]
    fn hammersley_examples() {
        assert_eq!(hammersley(1, 3, 8).unwrap(), 0.375);
        assert_eq!(hammersley(2, 5, 8).unwrap(), vdc(5, 2).unwrap());
        assert_eq!(hammersley(3, 5, 8).unwrap(), vdc(5, 3).unwrap());
        assert!(hammersley(1, 8, 8).is_err());
        assert!(hammersley(0, 1, 8).is_err());
    }

    #[test]
    fn faure_first_dimension_is_vdc() {
        assert_eq!(faure(1, 209, 7).unwrap(), 305.0 / 343.0);
        for k in 1..=7 {
            assert_eq!(faure(k, 0, 7).unwrap(), 0.0);
        }
        assert!(faure(1, 3, 9).is_err());
        assert!(faure(8, 3, 7).is_err());
    }
}
