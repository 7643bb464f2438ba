//! Train / test plumbing shared by every task.

use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::Result;
use hdseed::model::{train_single_pass, ClassModel, Evaluation, Metric, Refresh};
use hdseed::{derive_seed, rng_from_seed, Accumulator, Hypervector};
use rayon::prelude::*;

use crate::report::{Confusion, Timing};

/// Stream ids for `derive_seed`, so each random component of a run draws
/// from its own stream.
pub(crate) const TIE_STREAM: u64 = 0x7469_6500;
pub(crate) const LEVEL_STREAM: u64 = 0x6c65_7600;
pub(crate) const PROJECTION_STREAM: u64 = 0x7072_6f00;

pub(crate) fn tie_break(dim: usize, seed: u64) -> Hypervector {
    Hypervector::random(dim, &mut rng_from_seed(derive_seed(seed, TIE_STREAM)))
}

/// Single-pass training sharded across the pool. Shards are summed, so the
/// result does not depend on scheduling.
pub fn train_parallel(
    encoded: &[Hypervector],
    labels: &[String],
    tie: &Hypervector,
    metric: Metric,
) -> Result<ClassModel> {
    let dim = tie.dim();
    let shards: Vec<BTreeMap<String, Accumulator>> = encoded
        .par_chunks(2048)
        .zip(labels.par_chunks(2048))
        .map(|(hvs, ls)| {
            let mut m: BTreeMap<String, Accumulator> = BTreeMap::new();
            for (hv, l) in hvs.iter().zip(ls) {
                m.entry(l.clone()).or_insert_with(|| Accumulator::new(dim)).add(hv)?;
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    let mut total: BTreeMap<String, Accumulator> = BTreeMap::new();
    for shard in shards {
        for (l, acc) in shard {
            match total.get_mut(&l) {
                Some(t) => t.merge(&acc)?,
                None => {
                    total.insert(l, acc);
                }
            }
        }
    }
    Ok(ClassModel::from_accumulators(tie.clone(), metric, total)?)
}

/// Sequential reference used by tests.
pub fn train_sequential(
    encoded: &[Hypervector],
    labels: &[String],
    tie: &Hypervector,
    metric: Metric,
) -> Result<ClassModel> {
    Ok(train_single_pass(
        encoded.iter().zip(labels.iter().map(String::as_str)),
        tie.clone(),
        metric,
    )?)
}

pub fn evaluate_parallel(model: &ClassModel, encoded: &[Hypervector], labels: &[String]) -> Result<Evaluation> {
    let pairs: Vec<(String, String)> = encoded
        .par_iter()
        .zip(labels.par_iter())
        .map(|(hv, l)| Ok((l.clone(), model.classify(hv)?.0)))
        .collect::<Result<_>>()?;
    Ok(Evaluation::from_pairs(&pairs)?)
}

/// Encoded train and test sets for one iteration.
pub struct Encoded {
    pub train: Vec<Hypervector>,
    pub train_labels: Vec<String>,
    pub test: Vec<Hypervector>,
    pub test_labels: Vec<String>,
}

pub struct Outcome {
    pub evaluation: Evaluation,
    pub timing: Timing,
}

/// Train (single pass plus `epochs` retraining passes), then test.
pub fn fit_and_score(
    data: &Encoded,
    tie: &Hypervector,
    metric: Metric,
    epochs: usize,
    encode_s: f64,
) -> Result<Outcome> {
    let t = Instant::now();
    let mut model = train_parallel(&data.train, &data.train_labels, tie, metric)?;
    for _ in 0..epochs {
        let errors = model.retrain_epoch(
            data.train.iter().zip(data.train_labels.iter().map(String::as_str)),
            Refresh::Online,
        )?;
        if errors == 0 {
            break;
        }
    }
    let train_s = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let evaluation = evaluate_parallel(&model, &data.test, &data.test_labels)?;
    Ok(Outcome {
        evaluation,
        timing: Timing {
            encode_s,
            train_s,
            test_s: t.elapsed().as_secs_f64(),
        },
    })
}

pub fn confusion(e: &Evaluation) -> Confusion {
    Confusion {
        labels: e.labels.clone(),
        counts: e.confusion.clone(),
    }
}

pub fn add_timing(total: &mut Timing, t: &Timing) {
    total.encode_s += t.encode_s;
    total.train_s += t.train_s;
    total.test_s += t.test_s;
}

pub fn round_timing(t: &Timing) -> Timing {
    use crate::report::round6;
    Timing {
        encode_s: round6(t.encode_s),
        train_s: round6(t.train_s),
        test_s: round6(t.test_s),
    }
}
