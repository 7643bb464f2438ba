use std::fmt;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::ValueEnum;
use hdseed::encode::MemorySource;
use hdseed::model::Metric;
use hdseed::seqgen::{BinaryCodeFamily, SequenceFamily};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Mnist,
    Lang,
    Synth,
}

/// Hypervector source named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SeqKind {
    Random,
    Sobol,
    Halton,
    Vdc,
    Faure,
    Weyl,
    R2,
    Hammersley,
    Latin,
    Hadamard,
    Gold,
    Kasami,
}

impl SeqKind {
    /// Whether repeated runs can differ (and so need several iterations).
    pub fn is_stochastic(self) -> bool {
        matches!(self, SeqKind::Random | SeqKind::Latin)
    }

    /// Unit-interval family, `None` for binary code sources.
    pub fn sequence_family(self, seed: u64) -> Option<SequenceFamily> {
        Some(match self {
            SeqKind::Random => SequenceFamily::Random { seed },
            SeqKind::Sobol => SequenceFamily::Sobol,
            SeqKind::Halton => SequenceFamily::Halton,
            SeqKind::Vdc => SequenceFamily::Vdc,
            SeqKind::Faure => SequenceFamily::Faure { omega: None },
            SeqKind::Weyl => SequenceFamily::Weyl,
            SeqKind::R2 => SequenceFamily::R2,
            SeqKind::Hammersley => SequenceFamily::Hammersley,
            SeqKind::Latin => SequenceFamily::LatinHypercube { seed },
            SeqKind::Hadamard | SeqKind::Gold | SeqKind::Kasami => return None,
        })
    }

    pub fn code_family(self) -> Option<BinaryCodeFamily> {
        match self {
            SeqKind::Hadamard => Some(BinaryCodeFamily::Hadamard),
            SeqKind::Gold => Some(BinaryCodeFamily::Gold { degree: None }),
            SeqKind::Kasami => Some(BinaryCodeFamily::Kasami { degree: None }),
            _ => None,
        }
    }

    /// Item memory source: random HVs for `random`, thresholded sequences for
    /// the other unit-interval families, raw bits for binary codes.
    pub fn memory_source(self, seed: u64, threshold: f64) -> MemorySource {
        match self {
            SeqKind::Random => MemorySource::Random { seed },
            _ => match self.code_family() {
                Some(code) => MemorySource::BinaryCode(code),
                None => MemorySource::Sequence {
                    family: self.sequence_family(seed).expect("unit-interval family"),
                    threshold,
                },
            },
        }
    }
}

impl fmt::Display for SeqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EncoderKind {
    Record,
    Ngram,
    Levelsum,
    Fracpow,
    Rbf,
    Thermometer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PosEncoder {
    /// One item-memory vector per flat pixel index.
    Item,
    /// Rotation grid codes from two base vectors.
    Fracpow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LevelEncoderKind {
    /// Compare the scalar against the source's level sequence.
    Sequence,
    /// Quantize into `levels` and use a disjoint flip chain.
    Flipchain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MetricArg {
    Hamming,
    Cosine,
    Dot,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Hamming => Metric::Hamming,
            MetricArg::Cosine => Metric::Cosine,
            MetricArg::Dot => Metric::Dot,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub task: Task,
    pub seq: SeqKind,
    pub encoder: EncoderKind,
    pub dim: usize,
    pub levels: usize,
    pub ngram: usize,
    pub seed: u64,
    pub iterations: usize,
    pub epochs: usize,
    pub train_limit: Option<usize>,
    pub test_limit: Option<usize>,
    pub metric: MetricArg,
    pub pos_encoder: PosEncoder,
    pub level_encoder: LevelEncoderKind,
    pub threshold: f64,
    /// Not part of the report: results do not depend on it.
    #[serde(skip)]
    pub threads: Option<usize>,
    #[serde(skip)]
    pub data_dir: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults for a task: record encoding for MNIST, 4-grams for text,
    /// RBF for synthetic blobs.
    pub fn new(task: Task) -> Self {
        let (encoder, dim) = match task {
            Task::Mnist => (EncoderKind::Record, 1024),
            Task::Lang => (EncoderKind::Ngram, 256),
            Task::Synth => (EncoderKind::Rbf, 1024),
        };
        Self {
            task,
            seq: SeqKind::Sobol,
            encoder,
            dim,
            levels: 256,
            ngram: 4,
            seed: 0,
            iterations: 1,
            epochs: 0,
            train_limit: None,
            test_limit: None,
            metric: MetricArg::Hamming,
            pos_encoder: PosEncoder::Item,
            level_encoder: LevelEncoderKind::Sequence,
            threshold: 0.5,
            threads: None,
            data_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 64 {
            bail!("--dim must be at least 64, got {}", self.dim);
        }
        if self.ngram == 0 {
            bail!("--ngram must be at least 1");
        }
        if self.iterations == 0 {
            bail!("--iterations must be at least 1");
        }
        if self.levels < 2 {
            bail!("--levels must be at least 2");
        }
        if !(0.0..=1.0).contains(&self.threshold) {
            bail!("--threshold must lie in [0, 1]");
        }
        let allowed: &[EncoderKind] = match self.task {
            Task::Mnist => &[EncoderKind::Record, EncoderKind::Fracpow],
            Task::Lang => &[EncoderKind::Ngram],
            Task::Synth => &[EncoderKind::Rbf, EncoderKind::Levelsum, EncoderKind::Thermometer],
        };
        if !allowed.contains(&self.encoder) {
            bail!(
                "encoder {:?} is not available for {:?} (use one of {allowed:?})",
                self.encoder,
                self.task
            );
        }
        Ok(())
    }

    /// Seed for iteration `k` of a stochastic source.
    pub fn iteration_seed(&self, k: usize) -> u64 {
        if k == 0 {
            self.seed
        } else {
            hdseed::derive_seed(self.seed, 1_000 + k as u64)
        }
    }
}
