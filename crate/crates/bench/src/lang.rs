//! Language identification from letter n-grams.

use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use hdseed::data::{load_tsv_corpus, symbol_index, TextDataset, ALPHABET};
use hdseed::encode::ItemMemory;
use hdseed::{BitSliceCounter, Hypervector};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::diagnostics::report_orthogonality;
use crate::pipeline::{self, Encoded};
use crate::report::{AccuracyStats, BenchReport, OrthogonalityStats, Timing, SCHEMA_VERSION};
use crate::source_discrepancy;

/// Item vectors pre-rotated for each n-gram offset, so an n-gram is a plain
/// XOR of table rows.
pub struct NgramEncoder {
    n: usize,
    dim: usize,
    rotated: Vec<Vec<Hypervector>>,
}

impl NgramEncoder {
    pub fn new(items: &ItemMemory, n: usize) -> Result<Self> {
        anyhow::ensure!(items.len() == ALPHABET.len(), "expected a 27-symbol item memory");
        let rotated = (0..n)
            .map(|k| items.hypervectors().iter().map(|hv| hv.permute(k as i64)).collect())
            .collect();
        Ok(Self {
            n,
            dim: items.dim(),
            rotated,
        })
    }

    /// Majority bundle of every n-gram in `text` (texts shorter than `n`
    /// form a single shorter gram).
    pub fn encode(&self, text: &str, tie: &Hypervector, counter: &mut BitSliceCounter) -> Result<Hypervector> {
        let symbols: Vec<usize> = text.chars().filter_map(symbol_index).collect();
        anyhow::ensure!(!symbols.is_empty(), "cannot encode empty text");
        counter.reset();
        let n = self.n.min(symbols.len());
        let words = self.rotated[0][0].words().len();
        let mut gram = vec![0u64; words];
        for window in symbols.windows(n) {
            gram.fill(0);
            for (k, &s) in window.iter().enumerate() {
                for (g, w) in gram.iter_mut().zip(self.rotated[k][s].words()) {
                    *g ^= w;
                }
            }
            counter.add(&Hypervector::from_words(self.dim, gram.clone())?)?;
        }
        Ok(counter.majority(tie)?)
    }

    pub fn encode_all(&self, ds: &TextDataset, tie: &Hypervector) -> Result<Vec<Hypervector>> {
        ds.samples
            .par_iter()
            .map_init(
                || BitSliceCounter::new(self.dim),
                |counter, (_, text)| self.encode(text, tie, counter),
            )
            .collect()
    }
}

pub struct LangData {
    pub train: TextDataset,
    pub test: TextDataset,
}

impl LangData {
    /// Reads `train.tsv` and `test.tsv`; limits apply per language.
    pub fn load(dir: &Path, cfg: &RunConfig) -> Result<Self> {
        let hint = "run scripts/build_lang_corpus.py or point HDSEED_DATA_DIR / --data-dir at a directory with lang/";
        let read = |name: &str| {
            let p = dir.join(name);
            load_tsv_corpus(&p).with_context(|| format!("loading {} ({hint})", p.display()))
        };
        let mut train = read("train.tsv")?;
        let mut test = read("test.tsv")?;
        if let Some(n) = cfg.train_limit {
            train.limit_per_label(n);
        }
        if let Some(n) = cfg.test_limit {
            test.limit_per_label(n);
        }
        Ok(Self { train, test })
    }
}

fn labels(ds: &TextDataset) -> Vec<String> {
    ds.samples.iter().map(|s| s.0.clone()).collect()
}

pub fn run_lang(cfg: &RunConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let data = LangData::load(&crate::data_root(cfg).join("lang"), cfg)?;
    run_lang_on(cfg, &data)
}

pub fn run_lang_on(cfg: &RunConfig, data: &LangData) -> Result<BenchReport> {
    cfg.validate()?;
    let symbols: Vec<String> = ALPHABET.iter().map(|c| c.to_string()).collect();
    let mut runs = Vec::with_capacity(cfg.iterations);
    let mut timing = Timing::default();
    let mut first = None;
    let mut ortho: Option<OrthogonalityStats> = None;
    for k in 0..cfg.iterations {
        let seed = if cfg.seq.is_stochastic() {
            cfg.iteration_seed(k)
        } else {
            cfg.seed
        };
        let t = Instant::now();
        let items = ItemMemory::build(&symbols, cfg.dim, &cfg.seq.memory_source(seed, cfg.threshold))
            .with_context(|| format!("building the {} letter memory", cfg.seq))?;
        let enc = NgramEncoder::new(&items, cfg.ngram)?;
        let tie = pipeline::tie_break(cfg.dim, seed);
        let encoded = Encoded {
            train: enc.encode_all(&data.train, &tie)?,
            train_labels: labels(&data.train),
            test: enc.encode_all(&data.test, &tie)?,
            test_labels: labels(&data.test),
        };
        let encode_s = t.elapsed().as_secs_f64();
        if ortho.is_none() {
            ortho = Some(report_orthogonality(&items)?);
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
