//! Image classification: every pixel's level vector is bound to its position
//! vector and the 784 products are bundled by majority.

use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use hdseed::data::{load_mnist, ImageDataset, Split};
use hdseed::encode::{grid_positions, threshold_hypervector, LevelEncoder, LevelMemory};
use hdseed::seqgen::SequenceSource;
use hdseed::{derive_seed, BitSliceCounter, Hypervector};
use rayon::prelude::*;

use crate::config::{EncoderKind, LevelEncoderKind, PosEncoder, RunConfig};
use crate::diagnostics::orthogonality;
use crate::pipeline::{self, Encoded, LEVEL_STREAM};
use crate::report::{AccuracyStats, BenchReport, OrthogonalityStats, Timing, SCHEMA_VERSION};
use crate::source_discrepancy;

/// Level vectors for every 8-bit intensity plus one position vector per pixel.
pub struct Codebook {
    pub levels: Vec<Hypervector>,
    pub positions: Vec<Hypervector>,
}

impl Codebook {
    /// For unit-interval sources, family member 0 drives the level
    /// comparisons and members `1..` give the positions (thresholded at
    /// `cfg.threshold`). Binary code sources supply positions directly and
    /// compare levels against the base-2 radical inverse.
    pub fn build(cfg: &RunConfig, seed: u64, rows: usize, cols: usize) -> Result<Self> {
        let dim = cfg.dim;
        let grid = cfg.pos_encoder == PosEncoder::Fracpow || cfg.encoder == EncoderKind::Fracpow;
        let n_pos = if grid { 2 } else { rows * cols };
        let (level_src, mut positions) = match cfg.seq.code_family() {
            Some(code) => (SequenceSource::Vdc { base: 2 }, code.hypervectors(n_pos, dim)?),
            None => {
                let family = cfg.seq.sequence_family(seed).expect("unit-interval family");
                let members = family
                    .members(n_pos + 1, dim)
                    .with_context(|| format!("{} cannot supply {} sequences", cfg.seq, n_pos + 1))?;
                let positions = members[1..]
                    .iter()
                    .map(|m| threshold_hypervector(m, dim, cfg.threshold))
                    .collect::<hdseed::Result<Vec<_>>>()?;
                (members[0].clone(), positions)
            }
        };
        if grid {
            positions = grid_positions(&positions[0], &positions[1], rows, cols)?;
        }
        let levels = match cfg.level_encoder {
            LevelEncoderKind::Sequence => LevelEncoder::new(&level_src, dim)?.table(256)?,
            LevelEncoderKind::Flipchain => {
                let chain = LevelMemory::flip_chain(dim, cfg.levels, derive_seed(seed, LEVEL_STREAM))?;
                (0..256).map(|p| chain.encode(p as f64 / 255.0).clone()).collect()
            }
        };
        Ok(Self { levels, positions })
    }

    pub fn encode(&self, pixels: &[u8], tie: &Hypervector, counter: &mut BitSliceCounter) -> Result<Hypervector> {
        counter.reset();
        for (&p, pos) in pixels.iter().zip(&self.positions) {
            counter.add_bound(&self.levels[p as usize], pos)?;
        }
        Ok(counter.majority(tie)?)
    }

    pub fn encode_all(&self, ds: &ImageDataset, tie: &Hypervector) -> Result<Vec<Hypervector>> {
        (0..ds.len())
            .into_par_iter()
            .map_init(
                || BitSliceCounter::new(tie.dim()),
                |counter, i| self.encode(ds.image(i), tie, counter),
            )
            .collect()
    }
}

pub struct MnistData {
    pub train: ImageDataset,
    pub test: ImageDataset,
}

impl MnistData {
    pub fn load(dir: &Path, cfg: &RunConfig) -> Result<Self> {
        let hint = "run scripts/fetch_mnist.sh or point HDSEED_DATA_DIR / --data-dir at a directory with mnist/";
        let mut train = load_mnist(dir, Split::Train)
            .with_context(|| format!("loading MNIST training split from {} ({hint})", dir.display()))?;
        let mut test = load_mnist(dir, Split::Test)
            .with_context(|| format!("loading MNIST test split from {} ({hint})", dir.display()))?;
        if let Some(n) = cfg.train_limit {
            train.truncate(n);
        }
        if let Some(n) = cfg.test_limit {
            test.truncate(n);
        }
        Ok(Self { train, test })
    }
}

fn labels(ds: &ImageDataset) -> Vec<String> {
    ds.labels().iter().map(|l| l.to_string()).collect()
}

pub fn run_mnist(cfg: &RunConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let dir = crate::data_root(cfg).join("mnist");
    let data = MnistData::load(&dir, cfg)?;
    run_mnist_on(cfg, &data)
}

/// Same as [`run_mnist`] on already-loaded data.
pub fn run_mnist_on(cfg: &RunConfig, data: &MnistData) -> Result<BenchReport> {
    cfg.validate()?;
    let (rows, cols) = (data.train.rows(), data.train.cols());
    let mut runs = Vec::with_capacity(cfg.iterations);
    let mut timing = Timing::default();
    let mut first = None;
    let mut ortho: Option<OrthogonalityStats> = None;
    let train_labels = labels(&data.train);
    let test_labels = labels(&data.test);
    for k in 0..cfg.iterations {
        let seed = if cfg.seq.is_stochastic() {
            cfg.iteration_seed(k)
        } else {
            cfg.seed
        };
        let t = Instant::now();
        let book = Codebook::build(cfg, seed, rows, cols)?;
        let tie = pipeline::tie_break(cfg.dim, seed);
        let encoded = Encoded {
            train: book.encode_all(&data.train, &tie)?,
            train_labels: train_labels.clone(),
            test: book.encode_all(&data.test, &tie)?,
            test_labels: test_labels.clone(),
        };
        let encode_s = t.elapsed().as_secs_f64();
        if ortho.is_none() {
            ortho = Some(orthogonality(&book.positions)?);
        }
        let out = pipeline::fit_and_score(&encoded, &tie, cfg.metric.into(), cfg.epochs, encode_s)?;
        runs.push(out.evaluation.accuracy);
        pipeline::add_timing(&mut timing, &out.timing);
        first.get_or_insert(out.evaluation);
    }
    let first = first.expect("at least one iteration");
    Ok(BenchReport {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        train_samples: data.train.len(),
        test_samples: data.test.len(),
        accuracy: AccuracyStats::from_runs(&runs),
        confusion: pipeline::confusion(&first),
        orthogonality: ortho,
        discrepancy: source_discrepancy(cfg)?,
        timing: pipeline::round_timing(&timing),
    })
}
