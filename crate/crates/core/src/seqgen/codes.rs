//! Binary code sequences: Walsh-Hadamard rows, Fibonacci LFSR m-sequences,
//! Gold codes and the small Kasami set.
//!
//! Feedback polynomials are written as their non-constant exponents, e.g.
//! `&[7, 6]` is `x^7 + x^6 + 1`. The highest exponent is the register length.

use crate::{HdError, Hypervector, Result};

/// Row `row` of the Sylvester Hadamard matrix of order `dim` in 0/1 form:
/// bit `j` is the parity of `row & j`.
pub fn hadamard_row(row: usize, dim: usize) -> Result<Hypervector> {
    if !dim.is_power_of_two() {
        return Err(HdError::invalid(format!(
            "Hadamard rows need a power-of-two dimension, got {dim}"
        )));
    }
    if row >= dim {
        return Err(HdError::invalid(format!("Hadamard row {row} out of range for {dim}")));
    }
    Ok(Hypervector::from_fn(dim, |j| (row & j).count_ones() % 2 == 1))
}

/// Fibonacci linear feedback shift register.
///
/// The register holds `a_n .. a_{n+m-1}` in bits `0 .. m-1`; each step outputs
/// `a_n` and shifts in `a_{n+m} = XOR of a_{n+e}` over the polynomial's
/// exponents `e < m` (including the constant term `e = 0`).
#[derive(Debug, Clone)]
pub struct Lfsr {
    degree: u32,
    feedback_mask: u64,
    state: u64,
}

impl Lfsr {
    pub fn new(taps: &[u32], seed: u64) -> Result<Self> {
        let degree = taps.iter().copied().max().ok_or(HdError::Empty("LFSR taps"))?;
        if !(2..=63).contains(&degree) {
            return Err(HdError::invalid(format!("LFSR degree {degree} outside 2..=63")));
        }
        let state = seed & ((1u64 << degree) - 1);
        if state == 0 {
            return Err(HdError::invalid("LFSR seed must be non-zero"));
        }
        let mut feedback_mask = 1u64;
        for &e in taps.iter().filter(|&&e| e < degree) {
            feedback_mask ^= 1 << e;
        }
        Ok(Self {
            degree,
            feedback_mask,
            state,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `2^m - 1`, the period when the polynomial is primitive.
    pub fn max_period(&self) -> usize {
        (1usize << self.degree) - 1
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_bit(&mut self) -> bool {
        let out = self.state & 1 == 1;
        let fb = (self.state & self.feedback_mask).count_ones() as u64 & 1;
        self.state = (self.state >> 1) | (fb << (self.degree - 1));
        out
    }
}

impl Iterator for Lfsr {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        Some(self.next_bit())
    }
}

pub fn lfsr_bits(taps: &[u32], seed: u64, count: usize) -> Result<Vec<bool>> {
    Ok(Lfsr::new(taps, seed)?.take(count).collect())
}

/// One period of the m-sequence for `taps`, started from state 1.
pub fn m_sequence(taps: &[u32]) -> Result<Vec<bool>> {
    let lfsr = Lfsr::new(taps, 1)?;
    let n = lfsr.max_period();
    Ok(lfsr.take(n).collect())
}

/// Preferred pairs of primitive polynomials, keyed by degree.
pub const GOLD_PREFERRED_PAIRS: &[(u32, &[u32], &[u32])] = &[
    (5, &[5, 2], &[5, 4, 3, 2]),
    (6, &[6, 1], &[6, 5, 2, 1]),
    (7, &[7, 3], &[7, 3, 2, 1]),
    (9, &[9, 4], &[9, 6, 4, 3]),
    (10, &[10, 3], &[10, 9, 8, 6, 3, 2]),
    (11, &[11, 2], &[11, 8, 5, 2]),
];

/// Primitive polynomials of even degree for the small Kasami set.
pub const KASAMI_POLYNOMIALS: &[(u32, &[u32])] = &[
    (4, &[4, 1]),
    (6, &[6, 1]),
    (8, &[8, 4, 3, 2]),
    (10, &[10, 3]),
    (12, &[12, 6, 4, 1]),
    (14, &[14, 10, 6, 1]),
];

pub fn gold_pair(degree: u32) -> Option<(&'static [u32], &'static [u32])> {
    GOLD_PREFERRED_PAIRS
        .iter()
        .find(|(d, _, _)| *d == degree)
        .map(|&(_, a, b)| (a, b))
}

/// Gold code `index` for a preferred pair: `u[t] XOR v[t + index]` over one
/// period `N = 2^m - 1`, with `index` in `0..N`.
pub fn gold(index: usize, taps1: &[u32], taps2: &[u32], seeds: (u64, u64)) -> Result<Vec<bool>> {
    let a = Lfsr::new(taps1, seeds.0)?;
    let b = Lfsr::new(taps2, seeds.1)?;
    if a.degree() != b.degree() {
        return Err(HdError::invalid("Gold code polynomials must share a degree"));
    }
    let n = a.max_period();
    if index >= n {
        return Err(HdError::invalid(format!("Gold index {index} outside 0..{n}")));
    }
    let u: Vec<bool> = a.take(n).collect();
    let v: Vec<bool> = b.take(n).collect();
    Ok((0..n).map(|t| u[t] ^ v[(t + index) % n]).collect())
}

/// Small-set Kasami sequence `index` for an even-degree primitive polynomial.
///
/// With `u` the m-sequence (period `N = 2^m - 1`) and `w` its decimation by
/// `q = 2^(m/2) + 1`, sequence `k < 2^(m/2) - 1` is `u XOR (w shifted by k)`;
/// the last index `2^(m/2) - 1` is `u` itself.
pub fn kasami(index: usize, taps: &[u32]) -> Result<Vec<bool>> {
    let u = m_sequence(taps)?;
    let m = taps.iter().copied().max().unwrap_or(0);
    if m % 2 != 0 {
        return Err(HdError::invalid(format!("Kasami needs an even degree, got {m}")));
    }
    let family = kasami_family_size(m);
    if index >= family {
        return Err(HdError::invalid(format!("Kasami index {index} outside 0..{family}")));
    }
    if index == family - 1 {
        return Ok(u);
    }
    let n = u.len();
    let q = (1usize << (m / 2)) + 1;
    let w: Vec<bool> = (0..n).map(|t| u[(q * t) % n]).collect();
    Ok((0..n).map(|t| u[t] ^ w[(t + index) % n]).collect())
}

pub fn kasami_family_size(degree: u32) -> usize {
    1usize << (degree / 2)
}

/// Tiles a code cyclically to `dim` bits.
pub fn code_to_hypervector(bits: &[bool], dim: usize) -> Result<Hypervector> {
    if bits.is_empty() {
        return Err(HdError::Empty("code sequence"));
    }
    Ok(Hypervector::from_fn(dim, |j| bits[j % bits.len()]))
}
