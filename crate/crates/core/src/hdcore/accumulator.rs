use crate::hdcore::hypervector::word_count;
use crate::{HdError, Hypervector, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Per-dimension signed counters: the bipolar sum of every hypervector
/// accumulated so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Accumulator {
    counts: Vec<i32>,
    // number of accumulate calls, bounds |counts[i]|
    added: u64,
}

impl Accumulator {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "accumulator dimension must be positive");
        Self {
            counts: vec![0; dim],
            added: 0,
        }
    }

    /// Rebuilds an accumulator from raw counters; the added count is taken
    /// as the largest magnitude, the least consistent with the counters.
    pub fn from_counts(counts: Vec<i32>) -> Result<Self> {
        let added = counts.iter().map(|c| c.unsigned_abs() as u64).max().unwrap_or(0);
        Self::from_parts(counts, added)
    }

    /// Rebuilds an accumulator from counters and the number of vectors that
    /// went into them (e.g. a saved model).
    pub fn from_parts(counts: Vec<i32>, added: u64) -> Result<Self> {
        if counts.is_empty() {
            return Err(HdError::Empty("accumulator counts"));
        }
        if counts.iter().any(|c| c.unsigned_abs() as u64 > added) {
            return Err(HdError::invalid(format!("a counter exceeds the {added} added vectors")));
        }
        Ok(Self { counts, added })
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[i32] {
        &self.counts
    }

    /// How many hypervectors have been added or subtracted.
    pub fn added(&self) -> u64 {
        self.added
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// `counts[i] += sign * (2 * hv[i] - 1)`.
    pub fn accumulate(&mut self, hv: &Hypervector, sign: Sign) -> Result<()> {
        if hv.dim() != self.dim() {
            return Err(HdError::DimensionMismatch {
                expected: self.dim(),
                found: hv.dim(),
            });
        }
        let s: i32 = match sign {
            Sign::Plus => 1,
            Sign::Minus => -1,
        };
        for (chunk, &word) in self.counts.chunks_mut(64).zip(hv.words()) {
            for (j, c) in chunk.iter_mut().enumerate() {
                let bit = (word >> j) & 1;
                *c += s * (2 * bit as i32 - 1);
            }
        }
        self.added += 1;
        Ok(())
    }

    pub fn add(&mut self, hv: &Hypervector) -> Result<()> {
        self.accumulate(hv, Sign::Plus)
    }

    /// Element-wise sum of two shards.
    pub fn merge(&mut self, other: &Accumulator) -> Result<()> {
        if other.dim() != self.dim() {
            return Err(HdError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.added += other.added;
        Ok(())
    }

    /// Per-dimension sign; zero counters take the bit from `tie_break`.
    pub fn binarize(&self, tie_break: &Hypervector) -> Result<Hypervector> {
        if tie_break.dim() != self.dim() {
            return Err(HdError::DimensionMismatch {
                expected: self.dim(),
                found: tie_break.dim(),
            });
        }
        let mut words = vec![0u64; word_count(self.dim())];
        for ((chunk, out), &tie) in self.counts.chunks(64).zip(words.iter_mut()).zip(tie_break.words()) {
            let mut w = 0u64;
            for (j, &c) in chunk.iter().enumerate() {
                let bit = match c.signum() {
                    1 => 1,
                    -1 => 0,
                    _ => (tie >> j) & 1,
                };
                w |= bit << j;
            }
            *out = w;
        }
        Hypervector::from_words(self.dim(), words)
    }

    /// Cosine between the raw counters and a bipolar hypervector.
    pub fn cosine_with(&self, hv: &Hypervector) -> Result<f64> {
        if hv.dim() != self.dim() {
            return Err(HdError::DimensionMismatch {
                expected: self.dim(),
                found: hv.dim(),
            });
        }
        let mut dot = 0i64;
        let mut norm2 = 0i64;
        for (i, &c) in self.counts.iter().enumerate() {
            let c = c as i64;
            dot += if hv.get(i) { c } else { -c };
            norm2 += c * c;
        }
        if norm2 == 0 {
            return Ok(0.0);
        }
        Ok(dot as f64 / ((norm2 as f64).sqrt() * (self.dim() as f64).sqrt()))
    }
}

/// Majority of a non-empty list of hypervectors with explicit tie-break.
pub fn bundle(hvs: &[Hypervector], tie_break: &Hypervector) -> Result<Hypervector> {
    let first = hvs.first().ok_or(HdError::Empty("bundle input"))?;
    let mut counter = BitSliceCounter::new(first.dim());
    for hv in hvs {
        counter.add(hv)?;
    }
    counter.majority(tie_break)
}

/// Bit-sliced vertical counter for fast majority bundling.
///
/// Plane `p` holds bit `p` of every per-dimension ones-count, so adding a
/// hypervector is a ripple-carry add over 64 dimensions per word operation.
/// `majority` gives the same result as `Accumulator::binarize` over the same
/// inputs (all with sign +1).
#[derive(Debug, Clone)]
pub struct BitSliceCounter {
    dim: usize,
    words: usize,
    planes: Vec<Vec<u64>>,
    added: u64,
}

impl BitSliceCounter {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "counter dimension must be positive");
        Self {
            dim,
            words: word_count(dim),
            planes: Vec::new(),
            added: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn added(&self) -> u64 {
        self.added
    }

    pub fn reset(&mut self) {
        for p in self.planes.iter_mut() {
            p.fill(0);
        }
        self.added = 0;
    }

    pub fn add(&mut self, hv: &Hypervector) -> Result<()> {
        if hv.dim() != self.dim {
            return Err(HdError::DimensionMismatch {
                expected: self.dim,
                found: hv.dim(),
            });
        }
        self.add_words(hv.words().iter().copied());
        Ok(())
    }

    /// Adds `a XOR b` without materializing the bound hypervector.
    pub fn add_bound(&mut self, a: &Hypervector, b: &Hypervector) -> Result<()> {
        for hv in [a, b] {
            if hv.dim() != self.dim {
                return Err(HdError::DimensionMismatch {
                    expected: self.dim,
                    found: hv.dim(),
                });
            }
        }
        self.add_words(a.words().iter().zip(b.words()).map(|(x, y)| x ^ y));
        Ok(())
    }

    fn add_words(&mut self, words: impl Iterator<Item = u64>) {
        self.added += 1;
        let needed = (u64::BITS - self.added.leading_zeros()) as usize;
        while self.planes.len() < needed {
            self.planes.push(vec![0; self.words]);
        }
        for (w, mut carry) in words.enumerate() {
            for plane in self.planes.iter_mut() {
                if carry == 0 {
                    break;
                }
                let t = plane[w];
                plane[w] = t ^ carry;
                carry &= t;
            }
        }
    }

    /// Ones-count of dimension `i`.
    pub fn count(&self, i: usize) -> u64 {
        assert!(i < self.dim);
        self.planes
            .iter()
            .enumerate()
            .map(|(p, plane)| ((plane[i / 64] >> (i % 64)) & 1) << p)
            .sum()
    }

    /// Bit set where ones outnumber zeros; ties (possible for an even count)
    /// copy `tie_break`.
    pub fn majority(&self, tie_break: &Hypervector) -> Result<Hypervector> {
        if tie_break.dim() != self.dim {
            return Err(HdError::DimensionMismatch {
                expected: self.dim,
                found: tie_break.dim(),
            });
        }
        if self.added == 0 {
            return Ok(tie_break.clone());
        }
        // ones > n/2  <=>  ones > floor(n/2); tie <=> n even and ones == n/2
        let threshold = self.added / 2;
        let even = self.added.is_multiple_of(2);
        let mut out = vec![0u64; self.words];
        for (w, o) in out.iter_mut().enumerate() {
            let mut gt = 0u64;
            let mut eq = u64::MAX;
            for p in (0..self.planes.len()).rev() {
                let c = self.planes[p][w];
                let t = if (threshold >> p) & 1 == 1 { u64::MAX } else { 0 };
                gt |= eq & c & !t;
                eq &= !(c ^ t);
            }
            *o = if even { gt | (eq & tie_break.words()[w]) } else { gt };
        }
        Hypervector::from_words(self.dim, out)
    }
}
