//! Gaussian-blob smoke task for the real-valued encoders.

use std::time::Instant;

use anyhow::Result;
use hdseed::data::{synth_blobs, Standardizer};
use hdseed::encode::{
    level_sum_encode, rbf_encode, thermometer_encode, LevelEncoder, LevelMemory, ProjectionMatrix, RbfVariant,
};
use hdseed::{derive_seed, Hypervector};
use rayon::prelude::*;

use crate::config::{EncoderKind, RunConfig};
use crate::pipeline::{self, Encoded, LEVEL_STREAM, PROJECTION_STREAM};
use crate::report::{AccuracyStats, BenchReport, Timing, SCHEMA_VERSION};
use crate::source_discrepancy;

pub const SYNTH_CLASSES: usize = 4;
pub const SYNTH_FEATURES: usize = 8;
pub const SYNTH_SEPARATION: f64 = 10.0;
const TRAIN_PER_CLASS: usize = 200;
const TEST_PER_CLASS: usize = 100;

/// Maps standardized features to `[0, 1]` for the level-style encoders.
fn squash(z: f64) -> f64 {
    (0.5 + z / 6.0).clamp(0.0, 1.0)
}

/// Scales a sample to unit L2 norm so its distances fit the unit-bandwidth
/// kernel of a standard normal projection.
fn unit_length(x: &[f64]) -> Vec<f64> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return x.to_vec();
    }
    x.iter().map(|v| v / norm).collect()
}

enum FeatureEncoder {
    Rbf(ProjectionMatrix),
    /// One level table per feature.
    LevelSum(Vec<Box<dyn Fn(f64) -> Result<Hypervector> + Send + Sync>>),
    Thermometer,
}

impl FeatureEncoder {
    fn build(cfg: &RunConfig, seed: u64) -> Result<Self> {
        Ok(match cfg.encoder {
            EncoderKind::Rbf => FeatureEncoder::Rbf(ProjectionMatrix::gaussian(
                cfg.dim,
                SYNTH_FEATURES,
                derive_seed(seed, PROJECTION_STREAM),
                false,
            )?),
            EncoderKind::Levelsum => {
                let mut per_feature: Vec<Box<dyn Fn(f64) -> Result<Hypervector> + Send + Sync>> = Vec::new();
                match cfg.seq.sequence_family(seed) {
                    Some(family) => {
                        for src in family.members(SYNTH_FEATURES, cfg.dim)? {
                            let enc = LevelEncoder::new(&src, cfg.dim)?;
                            per_feature.push(Box::new(move |v| Ok(enc.encode(v)?)));
                        }
                    }
                    None => {
                        for n in 0..SYNTH_FEATURES {
                            let chain = LevelMemory::flip_chain(
                                cfg.dim,
                                cfg.levels,
                                derive_seed(seed, LEVEL_STREAM + n as u64),
                            )?;
                            per_feature.push(Box::new(move |v| Ok(chain.encode(v).clone())));
                        }
                    }
                }
                FeatureEncoder::LevelSum(per_feature)
            }
            EncoderKind::Thermometer => FeatureEncoder::Thermometer,
            other => anyhow::bail!("encoder {other:?} does not apply to synth"),
        })
    }

    fn encode(&self, x: &[f64], dim: usize, tie: &Hypervector) -> Result<Hypervector> {
        match self {
            FeatureEncoder::Rbf(p) => Ok(rbf_encode(&unit_length(x), p, RbfVariant::Cos)?),
            FeatureEncoder::LevelSum(tables) => {
                let hvs = tables
                    .iter()
                    .zip(x)
                    .map(|(f, &z)| f(squash(z)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(level_sum_encode(&hvs, tie)?)
            }
            FeatureEncoder::Thermometer => {
                // one segment per feature, concatenated; leftover bits stay zero
                let seg = dim / x.len();
                let codes = x
                    .iter()
                    .map(|&z| thermometer_encode(squash(z), seg))
                    .collect::<hdseed::Result<Vec<_>>>()?;
                Ok(Hypervector::from_fn(dim, |j| {
                    let n = j / seg;
                    n < codes.len() && codes[n].get(j % seg)
                }))
            }
        }
    }
}

pub fn run_synth(cfg: &RunConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let n_train = cfg.train_limit.unwrap_or(TRAIN_PER_CLASS);
    let n_test = cfg.test_limit.unwrap_or(TEST_PER_CLASS);
    let mut runs = Vec::with_capacity(cfg.iterations);
    let mut timing = Timing::default();
    let mut first = None;
    for k in 0..cfg.iterations {
        let seed = if cfg.seq.is_stochastic() {
            cfg.iteration_seed(k)
        } else {
            cfg.seed
        };
        // the data itself always follows the user seed
        let all = synth_blobs(
            SYNTH_CLASSES,
            n_train + n_test,
            SYNTH_FEATURES,
            SYNTH_SEPARATION,
            cfg.seed,
        )?;
        let (train, test) = all.samples.split_at(n_train * SYNTH_CLASSES);
        let raw: Vec<Vec<f64>> = train.iter().map(|s| s.0.clone()).collect();
        let scaler = Standardizer::fit(&raw)?;

        let t = Instant::now();
        let enc = FeatureEncoder::build(cfg, seed)?;
        let tie = pipeline::tie_break(cfg.dim, seed);
        let encode = |rows: &[(Vec<f64>, usize)]| -> Result<Vec<Hypervector>> {
            rows.par_iter()
                .map(|(x, _)| enc.encode(&scaler.apply(x), cfg.dim, &tie))
                .collect()
        };
        let labels = |rows: &[(Vec<f64>, usize)]| rows.iter().map(|s| s.1.to_string()).collect::<Vec<_>>();
        let encoded = Encoded {
            train: encode(train)?,
            train_labels: labels(train),
            test: encode(test)?,
            test_labels: labels(test),
        };
        let encode_s = t.elapsed().as_secs_f64();
        let out = pipeline::fit_and_score(&encoded, &tie, cfg.metric.into(), cfg.epochs, encode_s)?;
        runs.push(out.evaluation.accuracy);
        pipeline::add_timing(&mut timing, &out.timing);
        first.get_or_insert(out.evaluation);
    }
    let first = first.expect("at least one iteration");
    Ok(BenchReport {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        train_samples: n_train * SYNTH_CLASSES,
        test_samples: n_test * SYNTH_CLASSES,
        accuracy: AccuracyStats::from_runs(&runs),
        confusion: pipeline::confusion(&first),
        orthogonality: None,
        discrepancy: source_discrepancy(cfg)?,
        timing: pipeline::round_timing(&timing),
    })
}
