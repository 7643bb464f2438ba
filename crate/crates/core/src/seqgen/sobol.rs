//! Sobol sequence over the embedded Joe-Kuo direction numbers.
//!
//! Points are generated in natural (not Gray-code) index order,
//! `x(i) = XOR of v_b over the set bits b of i`, so dimension 1 is exactly
//! the base-2 radical inverse.

use std::sync::OnceLock;

use super::sobol_table::JOE_KUO;
use crate::{HdError, Result};

/// Number of dimensions with embedded direction numbers.
pub const SOBOL_MAX_DIM: usize = JOE_KUO.len() + 1;

const BITS: usize = 32;

type Directions = [u32; BITS];

fn directions() -> &'static [Directions] {
    static TABLE: OnceLock<Vec<Directions>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(SOBOL_MAX_DIM);
        let mut first = [0u32; BITS];
        for (j, v) in first.iter_mut().enumerate() {
            *v = 1 << (BITS - 1 - j);
        }
        out.push(first);
        for &(degree, coeffs, m) in JOE_KUO.iter() {
            out.push(direction_numbers(degree as usize, coeffs, m));
        }
        out
    })
}

fn direction_numbers(s: usize, a: u32, m: &[u32]) -> Directions {
    let mut v = [0u32; BITS];
    for j in 0..s.min(BITS) {
        v[j] = m[j] << (BITS - 1 - j);
    }
    for j in s..BITS {
        let mut x = v[j - s] ^ (v[j - s] >> s);
        for r in 1..s {
            if (a >> (s - 1 - r)) & 1 == 1 {
                x ^= v[j - r];
            }
        }
        v[j] = x;
    }
    v
}

/// Coordinate `dim` (1-based) of Sobol point `index`.
pub fn sobol(dim: usize, index: u64) -> Result<f64> {
    if dim == 0 || dim > SOBOL_MAX_DIM {
        return Err(HdError::UnsupportedDimension {
            requested: dim,
            max: SOBOL_MAX_DIM,
        });
    }
    if index >> BITS != 0 {
        return Err(HdError::invalid(format!("Sobol index {index} exceeds 2^{BITS}")));
    }
    Ok(sobol_bits(&directions()[dim - 1], index) as f64 / (1u64 << BITS) as f64)
}

fn sobol_bits(v: &Directions, index: u64) -> u32 {
    let mut x = 0u32;
    let mut i = index;
    let mut b = 0;
    while i != 0 {
        if i & 1 == 1 {
            x ^= v[b];
        }
        i >>= 1;
        b += 1;
    }
    x
}

/// First `count` values of one Sobol dimension.
pub fn sobol_column(dim: usize, count: usize) -> Result<Vec<f64>> {
    if count > 0 {
        sobol(dim, count as u64 - 1)?;
    }
    (0..count as u64).map(|i| sobol(dim, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqgen::vdc;

    #[test]
    fn dimension_one_is_base2_vdc() {
        for i in 0..4096 {
            assert_eq!(sobol(1, i).unwrap(), vdc(i, 2).unwrap());
        }
    }

    #[test]
    fn second_dimension_head() {
        let head: Vec<f64> = (0..4).map(|i| sobol(2, i).unwrap()).collect();
        assert_eq!(head, vec![0.0, 0.5, 0.75, 0.25]);
    }

    #[test]
    fn origin_and_bounds() {
        for d in [1, 2, 8, 500, SOBOL_MAX_DIM] {
            assert_eq!(sobol(d, 0).unwrap(), 0.0);
        }
        assert!(sobol(0, 1).is_err());
        assert!(sobol(SOBOL_MAX_DIM + 1, 1).is_err());
        assert!(sobol(1, 1 << 32).is_err());
    }

    #[test]
    fn each_dimension_is_a_dyadic_permutation() {
        // any 2^k consecutive-from-zero points hit every k-bit dyadic once
        for d in [2, 3, 7, 100, 1024] {
            let n = 256u64;
            let mut seen = vec![false; n as usize];
            for i in 0..n {
                let slot = (sobol(d, i).unwrap() * n as f64) as usize;
                assert!(!seen[slot], "dim {d}");
                seen[slot] = true;
            }
        }
    }
}
