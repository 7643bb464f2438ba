//! Deterministic hypervector sources.
//!
//! Unit-interval sequences ([`SequenceSource`]) are compared against a
//! threshold or a scalar to produce hypervector bits; binary code families
//! ([`BinaryCodeFamily`]) produce bits directly. A [`SequenceFamily`] hands
//! out one distinct parameterization per symbol (Sobol dimension, Halton
//! prime, Weyl increment, ...).

mod additive;
mod codes;
mod discrepancy;
mod latin;
mod pointset;
mod radical;
mod sobol;
mod sobol_table;

use std::fmt;

use rand::Rng;

pub use additive::{plastic_constant, r2, weyl, WEYL_PI, WEYL_SILVER};
pub use codes::{
    code_to_hypervector, gold, gold_pair, hadamard_row, kasami, kasami_family_size, lfsr_bits, m_sequence, Lfsr,
    GOLD_PREFERRED_PAIRS, KASAMI_POLYNOMIALS,
};
pub use discrepancy::{centered_l2_discrepancy, centered_l2_discrepancy_squared};
pub use latin::latin_hypercube;
pub use pointset::PointSet;
pub use radical::{faure, halton, hammersley, is_prime, next_prime, nth_prime, primes, vdc};
pub use sobol::{sobol, sobol_column, SOBOL_MAX_DIM};

use crate::{derive_seed, rng_from_seed, HdError, Hypervector, Result};

/// One index-to-`[0, 1)` sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceSource {
    /// ChaCha8 stream; `value(i)` seeks, so it is still a pure function of `(seed, i)`.
    Random {
        seed: u64,
    },
    Vdc {
        base: u32,
    },
    Sobol {
        dim: usize,
    },
    Halton {
        dim: usize,
    },
    Faure {
        dim: usize,
        omega: u32,
    },
    Weyl {
        beta: f64,
    },
    R2 {
        dim: usize,
    },
    Hammersley {
        dim: usize,
        n: u64,
    },
    LatinHypercube {
        dim: usize,
        n: usize,
        seed: u64,
    },
}

impl SequenceSource {
    pub fn value(&self, index: u64) -> Result<f64> {
        match *self {
            SequenceSource::Random { seed } => {
                let mut rng = rng_from_seed(seed);
                rng.set_word_pos(2 * index as u128);
                Ok(rng.random::<f64>())
            }
            SequenceSource::Vdc { base } => vdc(index, base),
            SequenceSource::Sobol { dim } => sobol(dim, index),
            SequenceSource::Halton { dim } => halton(dim, index),
            SequenceSource::Faure { dim, omega } => faure(dim, index, omega),
            SequenceSource::Weyl { beta } => weyl(index, beta),
            SequenceSource::R2 { dim } => r2(dim, index),
            SequenceSource::Hammersley { dim, n } => hammersley(dim, index, n),
            SequenceSource::LatinHypercube { dim, n, seed } => {
                if index >= n as u64 {
                    return Err(HdError::invalid(format!(
                        "Latin hypercube index {index} outside 0..{n}"
                    )));
                }
                Ok(latin::latin_column(n, dim, seed)[index as usize])
            }
        }
    }

    /// The first `count` values.
    pub fn sample(&self, count: usize) -> Result<Vec<f64>> {
        match *self {
            SequenceSource::Random { seed } => {
                let mut rng = rng_from_seed(seed);
                Ok((0..count).map(|_| rng.random::<f64>()).collect())
            }
            SequenceSource::LatinHypercube { dim, n, seed } => {
                if count > n {
                    return Err(HdError::invalid(format!(
                        "Latin hypercube has {n} points, {count} requested"
                    )));
                }
                let mut col = latin::latin_column(n, dim, seed);
                col.truncate(count);
                Ok(col)
            }
            SequenceSource::Sobol { dim } => sobol_column(dim, count),
            _ => (0..count as u64).map(|i| self.value(i)).collect(),
        }
    }

    /// Whether `value` depends only on the descriptor and index with no seed.
    pub fn is_deterministic(&self) -> bool {
        !matches!(
            self,
            SequenceSource::Random { .. } | SequenceSource::LatinHypercube { .. }
        )
    }
}

impl fmt::Display for SequenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSource::Random { seed } => write!(f, "random(seed={seed})"),
            SequenceSource::Vdc { base } => write!(f, "vdc(base={base})"),
            SequenceSource::Sobol { dim } => write!(f, "sobol(dim={dim})"),
            SequenceSource::Halton { dim } => write!(f, "halton(dim={dim})"),
            SequenceSource::Faure { dim, omega } => write!(f, "faure(dim={dim}, omega={omega})"),
            SequenceSource::Weyl { beta } => write!(f, "weyl(beta={beta})"),
            SequenceSource::R2 { dim } => write!(f, "r2(dim={dim})"),
            SequenceSource::Hammersley { dim, n } => write!(f, "hammersley(dim={dim}, n={n})"),
            SequenceSource::LatinHypercube { dim, n, seed } => {
                write!(f, "latin(dim={dim}, n={n}, seed={seed})")
            }
        }
    }
}

/// A family of sequences, one member per symbol or coordinate.
///
/// Member `k` (0-based) of each family:
///
/// | family      | member `k`                                       | members |
/// |-------------|--------------------------------------------------|---------|
/// | Random      | own ChaCha stream derived from the seed          | any     |
/// | Vdc         | base `2^(k+1)`                                   | 31      |
/// | Sobol       | dimension `k + 1`                                | 1024    |
/// | Halton      | dimension `k + 1` (the `(k+1)`-th prime)         | 10,000  |
/// | Faure       | dimension `k + 1` in base omega                  | omega   |
/// | Weyl        | frac(pi), sqrt(2) - 1, then frac(sqrt(p)) for primes p >= 3 | 10,000 |
/// | R2          | dimension `k + 1`                                | 2       |
/// | Hammersley  | dimension `k + 1` (`index / n`, then primes)     | 10,000  |
/// | Latin       | column `k + 1` of a seeded hypercube             | any     |
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceFamily {
    Random {
        seed: u64,
    },
    Vdc,
    Sobol,
    Halton,
    /// `omega = None` picks the smallest prime >= the member count.
    Faure {
        omega: Option<u32>,
    },
    Weyl,
    R2,
    Hammersley,
    LatinHypercube {
        seed: u64,
    },
}

impl SequenceFamily {
    pub fn name(&self) -> &'static str {
        match self {
            SequenceFamily::Random { .. } => "random",
            SequenceFamily::Vdc => "vdc",
            SequenceFamily::Sobol => "sobol",
            SequenceFamily::Halton => "halton",
            SequenceFamily::Faure { .. } => "faure",
            SequenceFamily::Weyl => "weyl",
            SequenceFamily::R2 => "r2",
            SequenceFamily::Hammersley => "hammersley",
            SequenceFamily::LatinHypercube { .. } => "latin",
        }
    }

    pub fn is_deterministic(&self) -> bool {
        !matches!(
            self,
            SequenceFamily::Random { .. } | SequenceFamily::LatinHypercube { .. }
        )
    }

    /// How many distinct members exist, `None` if unbounded.
    pub fn capacity(&self) -> Option<usize> {
        match self {
            SequenceFamily::Random { .. } | SequenceFamily::LatinHypercube { .. } => None,
            SequenceFamily::Vdc => Some(31),
            SequenceFamily::Sobol => Some(SOBOL_MAX_DIM),
            SequenceFamily::Faure { omega: Some(w) } => Some(*w as usize),
            SequenceFamily::Faure { omega: None } => Some(primes()[primes().len() - 1] as usize),
            SequenceFamily::R2 => Some(2),
            SequenceFamily::Halton | SequenceFamily::Weyl | SequenceFamily::Hammersley => Some(primes().len()),
        }
    }

    /// The first `count` members, each producing sequences of `length` values
    /// (the length matters for Hammersley and Latin hypercube members).
    pub fn members(&self, count: usize, length: usize) -> Result<Vec<SequenceSource>> {
        if let Some(cap) = self.capacity() {
            if count > cap {
                return Err(HdError::NotEnoughSequences {
                    source_name: self.name().into(),
                    available: cap,
                    requested: count,
                });
            }
        }
        let omega = match self {
            SequenceFamily::Faure { omega: Some(w) } => {
                if !is_prime(*w) {
                    return Err(HdError::invalid(format!("Faure base {w} is not prime")));
                }
                *w
            }
            _ => next_prime(count.max(2) as u32),
        };
        Ok((0..count)
            .map(|k| match *self {
                SequenceFamily::Random { seed } => SequenceSource::Random {
                    seed: derive_seed(seed, k as u64),
                },
                SequenceFamily::Vdc => SequenceSource::Vdc { base: 2 << k },
                SequenceFamily::Sobol => SequenceSource::Sobol { dim: k + 1 },
                SequenceFamily::Halton => SequenceSource::Halton { dim: k + 1 },
                SequenceFamily::Faure { .. } => SequenceSource::Faure { dim: k + 1, omega },
                SequenceFamily::Weyl => SequenceSource::Weyl {
                    beta: weyl_increment(k),
                },
                SequenceFamily::R2 => SequenceSource::R2 { dim: k + 1 },
                SequenceFamily::Hammersley => SequenceSource::Hammersley {
                    dim: k + 1,
                    n: length as u64,
                },
                SequenceFamily::LatinHypercube { seed } => SequenceSource::LatinHypercube {
                    dim: k + 1,
                    n: length,
                    seed,
                },
            })
            .collect())
    }

    /// The first `n` points of the family's first `dims` coordinates.
    pub fn point_set(&self, n: usize, dims: usize) -> Result<PointSet> {
        let columns = self
            .members(dims, n)?
            .iter()
            .map(|src| src.sample(n))
            .collect::<Result<Vec<_>>>()?;
        PointSet::from_columns(&columns)
    }
}

fn weyl_increment(k: usize) -> f64 {
    match k {
        0 => WEYL_PI,
        1 => WEYL_SILVER,
        // primes()[1] == 3
        k => (primes()[k - 1] as f64).sqrt().fract(),
    }
}

/// Binary code families used directly as hypervector bits.
#[derive(Debug, Clone, PartialEq)]
pub enum BinaryCodeFamily {
    /// Sylvester rows `1..`; row 0 (constant) is skipped. Needs a power-of-two D.
    Hadamard,
    /// Gold codes of the given degree; `None` picks the smallest tabulated
    /// degree whose period covers D (the largest otherwise).
    Gold {
        degree: Option<u32>,
    },
    Kasami {
        degree: Option<u32>,
    },
    /// Phase shifts of one m-sequence.
    Lfsr {
        taps: Vec<u32>,
    },
}

impl BinaryCodeFamily {
    pub fn name(&self) -> &'static str {
        match self {
            BinaryCodeFamily::Hadamard => "hadamard",
            BinaryCodeFamily::Gold { .. } => "gold",
            BinaryCodeFamily::Kasami { .. } => "kasami",
            BinaryCodeFamily::Lfsr { .. } => "lfsr",
        }
    }

    /// `count` hypervectors of dimension `dim`; shorter codes tile cyclically.
    pub fn hypervectors(&self, count: usize, dim: usize) -> Result<Vec<Hypervector>> {
        let not_enough = |available: usize| HdError::NotEnoughSequences {
            source_name: self.name().into(),
            available,
            requested: count,
        };
        match self {
            BinaryCodeFamily::Hadamard => {
                if !dim.is_power_of_two() {
                    return Err(HdError::invalid(format!(
                        "Hadamard rows need a power-of-two dimension, got {dim}"
                    )));
                }
                if count > dim - 1 {
                    return Err(not_enough(dim - 1));
                }
                (1..=count).map(|r| hadamard_row(r, dim)).collect()
            }
            BinaryCodeFamily::Gold { degree } => {
                let degree = degree.unwrap_or_else(|| pick_degree(GOLD_PREFERRED_PAIRS.iter().map(|p| p.0), dim));
                let (a, b) = gold_pair(degree)
                    .ok_or_else(|| HdError::invalid(format!("no preferred Gold pair of degree {degree}")))?;
                let n = (1usize << degree) - 1;
                // family: u, v, then u ^ shift(v, k)
                if count > n + 2 {
                    return Err(not_enough(n + 2));
                }
                let u = m_sequence(a)?;
                let v = m_sequence(b)?;
                (0..count)
                    .map(|k| match k {
                        0 => code_to_hypervector(&u, dim),
                        1 => code_to_hypervector(&v, dim),
                        k => code_to_hypervector(&gold(k - 2, a, b, (1, 1))?, dim),
                    })
                    .collect()
            }
            BinaryCodeFamily::Kasami { degree } => {
                let degree = degree.unwrap_or_else(|| {
                    let need = KASAMI_POLYNOMIALS
                        .iter()
                        .find(|(m, _)| kasami_family_size(*m) >= count)
                        .map(|(m, _)| *m);
                    need.unwrap_or_else(|| KASAMI_POLYNOMIALS.last().map(|p| p.0).unwrap_or(4))
                });
                let taps = KASAMI_POLYNOMIALS
                    .iter()
                    .find(|(m, _)| *m == degree)
                    .map(|(_, t)| *t)
                    .ok_or_else(|| HdError::invalid(format!("no Kasami polynomial of degree {degree}")))?;
                let family = kasami_family_size(degree);
                if count > family {
                    return Err(not_enough(family));
                }
                (0..count)
                    .map(|k| code_to_hypervector(&kasami(k, taps)?, dim))
                    .collect()
            }
            BinaryCodeFamily::Lfsr { taps } => {
                let seq = m_sequence(taps)?;
                let n = seq.len();
                if count > n {
                    return Err(not_enough(n));
                }
                let stride = (n / count.max(1)).max(1);
                (0..count)
                    .map(|k| {
                        let shift = k * stride;
                        Ok(Hypervector::from_fn(dim, |j| seq[(j + shift) % n]))
                    })
                    .collect()
            }
        }
    }
}

fn pick_degree(degrees: impl Iterator<Item = u32>, dim: usize) -> u32 {
    let mut last = 0;
    for d in degrees {
        last = d;
        if (1usize << d) > dim {
            return d;
        }
    }
    last
}
