//! Item and level memories and the encoders built on them.
//!
//! Memories hold quasi-orthogonal symbol vectors ([`ItemMemory`]) or
//! distance-correlated ordinal vectors ([`LevelMemory`], [`LevelEncoder`]).
//! Encoders combine them: record (bind levels to positions and bundle),
//! n-gram, permute-sum, level-sum, rotation-based fractional power, Gaussian
//! RBF projection, sparse ternary projection and thermometer codes.

mod encoders;
mod level;
mod memory;
mod projection;

pub use encoders::{
    fractional_power_encode, grid_positions, level_sum_encode, ngram_encode, permute_sum_encode, record_encode,
};
pub use level::{level_hv_from_sequence, thermometer_encode, LevelEncoder};
pub use memory::{
    hologn_items, item_memory_from_sequence, item_memory_random, read_hypervectors, threshold_hypervector,
    write_hypervectors, ItemMemory, LevelMemory, MemorySource,
};
pub use projection::{
    random_projection_sparse, rbf_encode, ProjectionMatrix, RbfVariant, SparseProjection, SparsityParams,
};

pub(crate) use memory::u32_field;
