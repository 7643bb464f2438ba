//! Packed binary hypervectors and the three HDC primitives.
//!
//! - **bind**: XOR, self-inverse and distance preserving
//! - **bundle**: per-dimension majority with an explicit tie-break vector
//! - **permute**: circular rotation toward higher bit indices
//!
//! Binary and bipolar views share storage (bit 1 is `+1`, bit 0 is `-1`), so
//! every similarity metric reduces to a popcount.

mod accumulator;
mod hypervector;

pub use accumulator::{bundle, Accumulator, BitSliceCounter, Sign};
pub(crate) use hypervector::word_count;
pub use hypervector::Hypervector;
