use std::fmt;

use rand::RngCore;

use crate::{HdError, Result};

/// A dense binary hypervector of `dim` bits packed into 64-bit words.
///
/// Bit `i` lives in `words[i / 64]` at position `i % 64`. Bits at index
/// `>= dim` are always zero; every constructor and operation restores that.
///
/// The same storage doubles as the bipolar view: bit 1 is `+1`, bit 0 is `-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypervector {
    dim: usize,
    words: Vec<u64>,
}

#[inline]
pub(crate) fn word_count(dim: usize) -> usize {
    dim.div_ceil(64)
}

#[inline]
fn tail_mask(dim: usize) -> u64 {
    match dim % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl Hypervector {
    /// All-zero (all `-1` in bipolar terms) hypervector.
    ///
    /// # Panics
    /// If `dim == 0`.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "hypervector dimension must be positive");
        Self {
            dim,
            words: vec![0; word_count(dim)],
        }
    }

    pub fn ones(dim: usize) -> Self {
        let mut hv = Self::zeros(dim);
        hv.words.fill(u64::MAX);
        hv.clear_padding();
        hv
    }

    /// i.i.d. Bernoulli(1/2) bits.
    pub fn random<R: RngCore + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let mut hv = Self::zeros(dim);
        for w in hv.words.iter_mut() {
            *w = rng.next_u64();
        }
        hv.clear_padding();
        hv
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut hv = Self::zeros(dim);
        for i in 0..dim {
            if f(i) {
                hv.words[i / 64] |= 1 << (i % 64);
            }
        }
        hv
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::from_fn(bits.len(), |i| bits[i])
    }

    /// Parses a string of `0`/`1` characters; character `i` becomes bit `i`.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(HdError::invalid(format!("not a bit: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(HdError::Empty("bit string"));
        }
        Ok(Self::from_bits(&bits))
    }

    /// Builds a hypervector from packed words, zeroing any padding bits.
    pub fn from_words(dim: usize, words: Vec<u64>) -> Result<Self> {
        if dim == 0 {
            return Err(HdError::invalid("hypervector dimension must be positive"));
        }
        if words.len() != word_count(dim) {
            return Err(HdError::LengthMismatch {
                left: words.len(),
                right: word_count(dim),
            });
        }
        let mut hv = Self { dim, words };
        hv.clear_padding();
        Ok(hv)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim, "bit index {i} out of range for dim {}", self.dim);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.dim, "bit index {i} out of range for dim {}", self.dim);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.dim, "bit index {i} out of range for dim {}", self.dim);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    /// Number of set bits.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.dim).map(move |i| self.get(i))
    }

    /// Bipolar view: `+1` for set bits, `-1` otherwise.
    pub fn to_bipolar(&self) -> Vec<i8> {
        self.iter_bits().map(|b| if b { 1 } else { -1 }).collect()
    }

    fn clear_padding(&mut self) {
        let mask = tail_mask(self.dim);
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(HdError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Element-wise XOR (multiplication in the bipolar view).
    pub fn bind(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.bind_assign(other)?;
        Ok(out)
    }

    pub fn bind_assign(&mut self, other: &Self) -> Result<()> {
        self.check_dim(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// Bitwise complement (bipolar negation).
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_padding();
        out
    }

    /// Circular rotation: the bit at position `i` moves to `(i + k) mod D`.
    /// Negative `k` rotates toward lower indices.
    pub fn permute(&self, k: i64) -> Self {
        let d = self.dim as i64;
        let k = k.rem_euclid(d) as usize;
        if k == 0 {
            return self.clone();
        }
        let mut out = Self::zeros(self.dim);
        shl_or(&self.words, k, &mut out.words);
        shr_or(&self.words, self.dim - k, &mut out.words);
        out.clear_padding();
        out
    }

    pub fn hamming(&self, other: &Self) -> Result<usize> {
        self.check_dim(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// `1 - hamming / D`, in `[0, 1]`.
    pub fn similarity_hamming(&self, other: &Self) -> Result<f64> {
        let h = self.hamming(other)?;
        Ok(1.0 - h as f64 / self.dim as f64)
    }

    /// Bipolar dot product, `D - 2 * hamming`.
    pub fn dot_bipolar(&self, other: &Self) -> Result<i64> {
        let h = self.hamming(other)? as i64;
        Ok(self.dim as i64 - 2 * h)
    }

    /// Bipolar cosine; both vectors have norm `sqrt(D)` so this is `dot / D`.
    pub fn cosine_bipolar(&self, other: &Self) -> Result<f64> {
        Ok(self.dot_bipolar(other)? as f64 / self.dim as f64)
    }
}

/// `dst |= src << k` over a little-endian bit array (toward higher indices).
fn shl_or(src: &[u64], k: usize, dst: &mut [u64]) {
    let (ws, bs) = (k / 64, k % 64);
    for i in (ws..dst.len()).rev() {
        let j = i - ws;
        let mut v = src[j] << bs;
        if bs != 0 && j > 0 {
            v |= src[j - 1] >> (64 - bs);
        }
        dst[i] |= v;
    }
}

/// `dst |= src >> k` (toward lower indices).
fn shr_or(src: &[u64], k: usize, dst: &mut [u64]) {
    let (ws, bs) = (k / 64, k % 64);
    let n = src.len();
    for (i, d) in dst.iter_mut().enumerate().take(n.saturating_sub(ws)) {
        let j = i + ws;
        let mut v = src[j] >> bs;
        if bs != 0 && j + 1 < n {
            v |= src[j + 1] << (64 - bs);
        }
        *d |= v;
    }
}

impl fmt::Debug for Hypervector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim <= 64 {
            let bits: String = self.iter_bits().map(|b| if b { '1' } else { '0' }).collect();
            write!(f, "Hypervector({bits})")
        } else {
            write!(f, "Hypervector(dim={}, weight={})", self.dim, self.weight())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng_from_seed;

    fn hv(s: &str) -> Hypervector {
        Hypervector::from_bitstring(s).unwrap()
    }

    #[test]
    fn bind_examples() {
        assert_eq!(hv("1010").bind(&hv("0110")).unwrap(), hv("1100"));
        let a = Hypervector::random(300, &mut rng_from_seed(1));
        assert_eq!(a.bind(&a).unwrap(), Hypervector::zeros(300));
        assert_eq!(a.bind(&Hypervector::zeros(300)).unwrap(), a);
    }

    #[test]
    fn bind_dimension_mismatch() {
        let err = hv("1010").bind(&hv("101")).unwrap_err();
        assert!(matches!(err, HdError::DimensionMismatch { expected: 4, found: 3 }));
    }

    #[test]
    fn permute_examples() {
        assert_eq!(hv("1000").permute(1), hv("0100"));
        assert_eq!(hv("1000").permute(-1), hv("0001"));
        assert_eq!(hv("1000").permute(5), hv("0100"));
        let a = Hypervector::random(1000, &mut rng_from_seed(2));
        assert_eq!(a.permute(0), a);
        assert_eq!(a.permute(337).permute(1000 - 337), a);
    }

    #[test]
    fn permute_matches_bitwise_definition() {
        for dim in [1, 7, 63, 64, 65, 130, 200] {
            let a = Hypervector::random(dim, &mut rng_from_seed(dim as u64));
            for k in [0i64, 1, 5, 63, 64, 65, 129, -3] {
                let r = a.permute(k);
                for i in 0..dim {
                    let j = (i as i64 + k).rem_euclid(dim as i64) as usize;
                    assert_eq!(r.get(j), a.get(i), "dim {dim} k {k} i {i}");
                }
            }
        }
    }

    #[test]
    fn padding_stays_clear() {
        let a = Hypervector::ones(70);
        assert_eq!(a.weight(), 70);
        assert_eq!(a.words()[1], (1 << 6) - 1);
        assert_eq!(a.complement().weight(), 0);
        assert_eq!(a.permute(13).weight(), 70);
        let w = Hypervector::from_words(70, vec![u64::MAX, u64::MAX]).unwrap();
        assert_eq!(w.weight(), 70);
    }

    #[test]
    fn metrics_on_complement() {
        let a = Hypervector::random(512, &mut rng_from_seed(3));
        assert_eq!(a.cosine_bipolar(&a).unwrap(), 1.0);
        assert_eq!(a.cosine_bipolar(&a.complement()).unwrap(), -1.0);
        assert_eq!(a.similarity_hamming(&a.complement()).unwrap(), 0.0);
        assert_eq!(a.dot_bipolar(&a).unwrap(), 512);
    }

    #[test]
    fn random_pair_hamming_near_half() {
        // binomial(10000, 1/2): mean 5000, sigma 50
        let mut rng = rng_from_seed(4);
        let a = Hypervector::random(10_000, &mut rng);
        let b = Hypervector::random(10_000, &mut rng);
        let h = a.hamming(&b).unwrap();
        assert!((4850..=5150).contains(&h), "{h}");
    }

    #[test]
    fn bitstring_rejects_garbage() {
        assert!(Hypervector::from_bitstring("10x1").is_err());
        assert!(Hypervector::from_bitstring("").is_err());
    }
}
