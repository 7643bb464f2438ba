//! Benchmarks comparing pseudo-random, low-discrepancy and binary-code
//! hypervector sources on MNIST, language identification and synthetic
//! blobs. The `hdseed` binary is a thin CLI over [`run`].

pub mod config;
pub mod diagnostics;
pub mod lang;
pub mod mnist;
pub mod pipeline;
pub mod report;
pub mod synth;

use std::path::PathBuf;

use anyhow::Result;

pub use config::{RunConfig, SeqKind, Task};
pub use diagnostics::{report_discrepancy, report_orthogonality};
pub use lang::run_lang;
pub use mnist::run_mnist;
pub use report::BenchReport;
pub use synth::run_synth;

/// Environment variable naming the dataset root.
pub const DATA_DIR_ENV: &str = "HDSEED_DATA_DIR";

/// Points used for the source discrepancy figure.
pub const DISCREPANCY_POINTS: usize = 1024;

/// Dataset root: explicit config, then `HDSEED_DATA_DIR`, then the
/// workspace `data/` directory.
pub fn data_root(cfg: &RunConfig) -> PathBuf {
    if let Some(d) = &cfg.data_dir {
        return d.clone();
    }
    if let Some(d) = std::env::var_os(DATA_DIR_ENV) {
        return PathBuf::from(d);
    }
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// Discrepancy of the source's first two coordinates; `None` for binary
/// codes, which have no unit-interval points.
pub fn source_discrepancy(cfg: &RunConfig) -> Result<Option<f64>> {
    match cfg.seq.sequence_family(cfg.seed) {
        Some(family) if family.capacity().is_none_or(|c| c >= 2) => {
            Ok(Some(report_discrepancy(&family, DISCREPANCY_POINTS, 2)?))
        }
        _ => Ok(None),
    }
}

pub fn run(cfg: &RunConfig) -> Result<BenchReport> {
    match cfg.task {
        Task::Mnist => run_mnist(cfg),
        Task::Lang => run_lang(cfg),
        Task::Synth => run_synth(cfg),
    }
}
