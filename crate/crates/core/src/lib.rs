//! Binary hyperdimensional computing with pluggable hypervector sources.
//!
//! The crate is split along the classic HDC pipeline:
//!
//! - [`hdcore`]: packed binary hypervectors, bind / bundle / permute and
//!   similarity metrics.
//! - [`seqgen`]: deterministic unit-interval sequences (Van der Corput, Sobol,
//!   Halton, Faure, Weyl, R2, Hammersley, Latin hypercube) and binary code
//!   sequences (Hadamard, LFSR, Gold, Kasami) used in place of a PRNG.
//! - [`encode`]: item and level memories plus the encoder families that turn
//!   symbols, scalars, feature vectors and images into hypervectors.
//! - [`model`]: single-pass class accumulators, retraining and inference.
//! - [`data`]: MNIST IDX and TSV text corpus loaders, synthetic blobs.

pub mod data;
pub mod encode;
mod error;
pub mod hdcore;
pub mod model;
pub mod seqgen;

pub use error::{HdError, Result};
pub use hdcore::{Accumulator, BitSliceCounter, Hypervector, Sign};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The RNG used everywhere a seed is accepted. ChaCha8 output is stable
/// across platforms and crate versions, which keeps seeded runs reproducible.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent child seed; used to give every symbol, dimension or
/// iteration its own stream from one user-facing seed.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    // splitmix64 finalizer over the pair
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
