use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::config::{OutputFormat, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 6 decimals so reports diff cleanly.
pub fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyStats {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single run.
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub runs: Vec<f64>,
}

impl AccuracyStats {
    pub fn from_runs(runs: &[f64]) -> Self {
        let n = runs.len() as f64;
        let mean = runs.iter().sum::<f64>() / n;
        let std = if runs.len() > 1 {
            (runs.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self {
            mean: round6(mean),
            std: round6(std),
            min: round6(runs.iter().copied().fold(f64::INFINITY, f64::min)),
            max: round6(runs.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
            runs: runs.iter().map(|&a| round6(a)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Confusion {
    pub labels: Vec<String>,
    /// `counts[true][predicted]`
    pub counts: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityStats {
    pub vectors: usize,
    pub mean_abs_cosine: f64,
    pub max_abs_cosine: f64,
    /// Pairs of bit-identical vectors.
    pub identical_pairs: usize,
}

/// Seconds per phase, summed over iterations.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub encode_s: f64,
    pub train_s: f64,
    pub test_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub train_samples: usize,
    pub test_samples: usize,
    pub accuracy: AccuracyStats,
    /// From the first iteration.
    pub confusion: Confusion,
    pub orthogonality: Option<OrthogonalityStats>,
    /// Centered L2 discrepancy of the source's first two coordinates.
    pub discrepancy: Option<f64>,
    pub timing: Timing,
}

impl BenchReport {
    /// Zeroes wall-clock fields, the only non-deterministic part of a report.
    pub fn mask_timing(&mut self) {
        self.timing = Timing::default();
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// One row per metric with a fixed set of config columns.
    pub fn to_csv(&self) -> Result<String> {
        let c = &self.config;
        let mut metrics = vec![
            ("accuracy_mean", self.accuracy.mean),
            ("accuracy_std", self.accuracy.std),
            ("accuracy_min", self.accuracy.min),
            ("accuracy_max", self.accuracy.max),
        ];
        if let Some(o) = &self.orthogonality {
            metrics.push(("mean_abs_cosine", o.mean_abs_cosine));
            metrics.push(("max_abs_cosine", o.max_abs_cosine));
        }
        if let Some(d) = self.discrepancy {
            metrics.push(("discrepancy", d));
        }
        metrics.push(("encode_s", self.timing.encode_s));
        metrics.push(("train_s", self.timing.train_s));
        metrics.push(("test_s", self.timing.test_s));

        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        for (name, value) in metrics {
            w.write_record([
                &format!("{}", self.schema_version),
                &enum_name(&c.task)?,
                &c.seq.to_string(),
                &enum_name(&c.encoder)?,
                &c.dim.to_string(),
                &c.seed.to_string(),
                &c.iterations.to_string(),
                &enum_name(&c.metric)?,
                name,
                &format!("{value:.6}"),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn emit(&self, format: OutputFormat, path: Option<&Path>) -> Result<()> {
        let text = match format {
            OutputFormat::Json => self.to_json()?,
            OutputFormat::Csv => self.to_csv()?,
        };
        match path {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "schema_version",
    "task",
    "seq",
    "encoder",
    "dim",
    "seed",
    "iterations",
    "metric",
    "name",
    "value",
];

fn enum_name<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_value(v)?.as_str().unwrap_or_default().to_string())
}
