//! Class prototypes: single-pass training, perceptron-style retraining and
//! nearest-class inference.

mod persist;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{Accumulator, HdError, Hypervector, Result, Sign};

/// Similarity used by [`ClassModel::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    /// `1 - hamming / D` against binarized class vectors.
    #[default]
    Hamming,
    /// Cosine against the raw integer accumulators.
    Cosine,
    /// Bipolar dot product against binarized class vectors.
    Dot,
}

impl Metric {
    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::Hamming => "hamming",
            Metric::Cosine => "cosine",
            Metric::Dot => "dot",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = HdError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hamming" => Ok(Metric::Hamming),
            "cosine" => Ok(Metric::Cosine),
            "dot" => Ok(Metric::Dot),
            other => Err(HdError::invalid(format!("unknown metric {other:?}"))),
        }
    }
}

/// When retraining refreshes the binarized class vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Refresh {
    /// After every update.
    #[default]
    Online,
    /// Once at the end of the epoch.
    PerEpoch,
}

/// Per-label accumulators plus their binarized view.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassModel {
    dim: usize,
    metric: Metric,
    tie_break: Hypervector,
    classes: BTreeMap<String, Accumulator>,
    binarized: BTreeMap<String, Hypervector>,
}

impl ClassModel {
    pub fn new(tie_break: Hypervector, metric: Metric) -> Self {
        Self {
            dim: tie_break.dim(),
            metric,
            tie_break,
            classes: BTreeMap::new(),
            binarized: BTreeMap::new(),
        }
    }

    /// Builds a model from already-summed accumulators (e.g. merged shards).
    pub fn from_accumulators(
        tie_break: Hypervector,
        metric: Metric,
        classes: BTreeMap<String, Accumulator>,
    ) -> Result<Self> {
        let mut model = Self::new(tie_break, metric);
        for (label, acc) in classes {
            model.check_dim(acc.dim())?;
            model.classes.insert(label, acc);
        }
        model.refresh_all()?;
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn set_metric(&mut self, metric: Metric) {
        self.metric = metric;
    }

    pub fn tie_break(&self) -> &Hypervector {
        &self.tie_break
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.classes.keys().map(String::as_str)
    }

    pub fn accumulator(&self, label: &str) -> Option<&Accumulator> {
        self.classes.get(label)
    }

    pub fn class_hypervector(&self, label: &str) -> Option<&Hypervector> {
        self.binarized.get(label)
    }

    pub fn accumulators(&self) -> &BTreeMap<String, Accumulator> {
        &self.classes
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(HdError::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    fn update(&mut self, label: &str, hv: &Hypervector, sign: Sign) -> Result<()> {
        self.check_dim(hv.dim())?;
        let dim = self.dim;
        self.classes
            .entry(label.to_string())
            .or_insert_with(|| Accumulator::new(dim))
            .accumulate(hv, sign)
    }

    fn refresh(&mut self, label: &str) -> Result<()> {
        if let Some(acc) = self.classes.get(label) {
            let hv = acc.binarize(&self.tie_break)?;
            self.binarized.insert(label.to_string(), hv);
        }
        Ok(())
    }

    fn refresh_all(&mut self) -> Result<()> {
        self.binarized = self
            .classes
            .iter()
            .map(|(l, acc)| Ok((l.clone(), acc.binarize(&self.tie_break)?)))
            .collect::<Result<_>>()?;
        Ok(())
    }

    /// Adds one sample to its class and refreshes that class's binary view.
    pub fn train(&mut self, hv: &Hypervector, label: &str) -> Result<()> {
        self.update(label, hv, Sign::Plus)?;
        self.refresh(label)
    }

    /// Score of `query` against one class under the model's metric.
    pub fn score(&self, label: &str, query: &Hypervector) -> Result<f64> {
        self.check_dim(query.dim())?;
        let missing = || HdError::invalid(format!("unknown class {label:?}"));
        match self.metric {
            Metric::Hamming => self.binarized.get(label).ok_or_else(missing)?.similarity_hamming(query),
            Metric::Dot => Ok(self.binarized.get(label).ok_or_else(missing)?.dot_bipolar(query)? as f64),
            Metric::Cosine => self.classes.get(label).ok_or_else(missing)?.cosine_with(query),
        }
    }

    /// Best-scoring label; ties go to the label that sorts first.
    pub fn classify(&self, query: &Hypervector) -> Result<(String, f64)> {
        self.check_dim(query.dim())?;
        let mut best: Option<(&str, f64)> = None;
        for label in self.classes.keys() {
            let s = self.score(label, query)?;
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((label, s));
            }
        }
        best.map(|(l, s)| (l.to_string(), s))
            .ok_or(HdError::Empty("model has no classes"))
    }

    /// One pass over `samples`: each misclassified sample is added to its true
    /// class and subtracted from the predicted one. Returns the error count.
    pub fn retrain_epoch<'a, I>(&mut self, samples: I, refresh: Refresh) -> Result<usize>
    where
        I: IntoIterator<Item = (&'a Hypervector, &'a str)>,
    {
        let mut errors = 0;
        for (hv, label) in samples {
            let (predicted, _) = self.classify(hv)?;
            if predicted == label {
                continue;
            }
            errors += 1;
            self.update(label, hv, Sign::Plus)?;
            self.update(&predicted, hv, Sign::Minus)?;
            if refresh == Refresh::Online {
                self.refresh(label)?;
                self.refresh(&predicted)?;
            }
        }
        if refresh == Refresh::PerEpoch {
            self.refresh_all()?;
        }
        Ok(errors)
    }

    pub fn evaluate<'a, I>(&self, samples: I) -> Result<Evaluation>
    where
        I: IntoIterator<Item = (&'a Hypervector, &'a str)>,
    {
        let mut pairs = Vec::new();
        for (hv, label) in samples {
            pairs.push((label.to_string(), self.classify(hv)?.0));
        }
        Evaluation::from_pairs(&pairs)
    }
}

/// Trains a fresh model on every `(hypervector, label)` once.
pub fn train_single_pass<'a, I>(samples: I, tie_break: Hypervector, metric: Metric) -> Result<ClassModel>
where
    I: IntoIterator<Item = (&'a Hypervector, &'a str)>,
{
    let mut model = ClassModel::new(tie_break, metric);
    for (hv, label) in samples {
        model.update(label, hv, Sign::Plus)?;
    }
    model.refresh_all()?;
    Ok(model)
}

/// Accuracy and confusion counts; rows are true labels, columns predictions,
/// both indexed by the sorted union of labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub total: usize,
    pub correct: usize,
    pub accuracy: f64,
    pub labels: Vec<String>,
    pub confusion: Vec<Vec<usize>>,
}

impl Evaluation {
    /// From `(true, predicted)` label pairs.
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(HdError::Empty("evaluation set"));
        }
        let mut labels: Vec<String> = pairs.iter().flat_map(|(t, p)| [t.clone(), p.clone()]).collect();
        labels.sort();
        labels.dedup();
        let idx = |l: &str| labels.binary_search_by(|x| x.as_str().cmp(l)).unwrap();
        let mut confusion = vec![vec![0; labels.len()]; labels.len()];
        let mut correct = 0;
        for (t, p) in pairs {
            confusion[idx(t)][idx(p)] += 1;
            correct += usize::from(t == p);
        }
        Ok(Self {
            total: pairs.len(),
            correct,
            accuracy: correct as f64 / pairs.len() as f64,
            labels,
            confusion,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng_from_seed;

    fn hv(s: &str) -> Hypervector {
        Hypervector::from_bitstring(s).unwrap()
    }

    fn tie16() -> Hypervector {
        Hypervector::zeros(16)
    }

    #[test]
    fn one_sample_per_class() {
        let a = hv("1100110011001100");
        let b = hv("1010101010101010");
        let m = train_single_pass([(&a, "a"), (&b, "b")], tie16(), Metric::Hamming).unwrap();
        assert_eq!(m.class_hypervector("a"), Some(&a));
        assert_eq!(m.classify(&a).unwrap(), ("a".to_string(), 1.0));
        let m3 = train_single_pass([(&a, "a"), (&a, "a"), (&a, "a")], tie16(), Metric::Hamming).unwrap();
        assert_eq!(m3.class_hypervector("a"), Some(&a));
    }

    #[test]
    fn toy_two_class_majority() {
        let xs = [
            (hv("1111000011110000"), "a"),
            (hv("1110000111100001"), "a"),
            (hv("0111100001111000"), "a"),
            (hv("0000111100001111"), "b"),
            (hv("0001111000011110"), "b"),
            (hv("1000011110000111"), "b"),
        ];
        let m = train_single_pass(xs.iter().map(|(h, l)| (h, *l)), tie16(), Metric::Hamming).unwrap();
        assert_eq!(m.class_hypervector("a"), Some(&hv("1111000011110000")));
        assert_eq!(m.class_hypervector("b"), Some(&hv("0000111100001111")));
        // exhaustive oracle: nearest by hamming, ties to "a"
        for q in 0u32..(1 << 16) {
            let query = Hypervector::from_fn(16, |i| (q >> i) & 1 == 1);
            let da = query.hamming(m.class_hypervector("a").unwrap()).unwrap();
            let db = query.hamming(m.class_hypervector("b").unwrap()).unwrap();
            let want = if db < da { "b" } else { "a" };
            assert_eq!(m.classify(&query).unwrap().0, want);
        }
    }

    #[test]
    fn complement_of_other_class() {
        let a = hv("1100110011001100");
        let b = hv("0011001100110011");
        let m = train_single_pass([(&a, "a"), (&b, "b")], tie16(), Metric::Dot).unwrap();
        assert_eq!(m.classify(&b.complement()).unwrap().0, "a");
    }

    #[test]
    fn metrics_agree_on_argmax() {
        let mut rng = rng_from_seed(3);
        let protos: Vec<Hypervector> = (0..4).map(|_| Hypervector::random(512, &mut rng)).collect();
        let labels = ["w", "x", "y", "z"];
        let mut m = train_single_pass(protos.iter().zip(labels), Hypervector::zeros(512), Metric::Hamming).unwrap();
        for _ in 0..50 {
            let q = Hypervector::random(512, &mut rng);
            m.set_metric(Metric::Hamming);
            let h = m.classify(&q).unwrap().0;
            m.set_metric(Metric::Dot);
            assert_eq!(m.classify(&q).unwrap().0, h);
        }
    }

    #[test]
    fn retrain_no_errors_is_identity() {
        let a = hv("1100110011001100");
        let b = hv("1010101010101010");
        let mut m = train_single_pass([(&a, "a"), (&b, "b")], tie16(), Metric::Hamming).unwrap();
        let before = m.clone();
        assert_eq!(m.retrain_epoch([(&a, "a"), (&b, "b")], Refresh::Online).unwrap(), 0);
        assert_eq!(m, before);
    }

    #[test]
    fn retrain_single_error_touches_two_classes() {
        let a = hv("1111111100000000");
        let b = hv("0000000011111111");
        let c = hv("1111000000001111");
        let mut m = train_single_pass([(&a, "a"), (&b, "b"), (&c, "c")], tie16(), Metric::Hamming).unwrap();
        let before = m.clone();
        let q = hv("1111111000000000"); // nearest a, labelled b
        assert_eq!(m.retrain_epoch([(&q, "b")], Refresh::Online).unwrap(), 1);
        assert_ne!(m.accumulator("a"), before.accumulator("a"));
        assert_ne!(m.accumulator("b"), before.accumulator("b"));
        assert_eq!(m.accumulator("c"), before.accumulator("c"));
    }

    #[test]
    fn retrain_converges_on_separable_toy() {
        let mut rng = rng_from_seed(9);
        let centers = [Hypervector::random(256, &mut rng), Hypervector::random(256, &mut rng)];
        let mut samples = Vec::new();
        for k in 0..40 {
            let c = k % 2;
            let mut x = centers[c].clone();
            for _ in 0..40 {
                x.flip(rand::Rng::random_range(&mut rng, 0..256));
            }
            samples.push((x, if c == 0 { "p" } else { "q" }));
        }
        let tie = Hypervector::random(256, &mut rng);
        let mut m = train_single_pass(samples.iter().map(|(h, l)| (h, *l)), tie, Metric::Hamming).unwrap();
        let mut errors = usize::MAX;
        for _ in 0..10 {
            errors = m
                .retrain_epoch(samples.iter().map(|(h, l)| (h, *l)), Refresh::Online)
                .unwrap();
            if errors == 0 {
                break;
            }
        }
        assert_eq!(errors, 0);
    }

    #[test]
    fn evaluation_counts() {
        assert!(Evaluation::from_pairs(&[]).is_err());
        let p = |t: &str, q: &str| (t.to_string(), q.to_string());
        let e = Evaluation::from_pairs(&[p("a", "a"), p("a", "b"), p("b", "b"), p("c", "b")]).unwrap();
        assert_eq!(e.correct, 2);
        assert_eq!(e.accuracy, 0.5);
        assert_eq!(e.confusion, vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 1, 0]]);
        let a = hv("1100110011001100");
        let m = train_single_pass([(&a, "a")], tie16(), Metric::Hamming).unwrap();
        assert_eq!(m.evaluate([(&a, "a")]).unwrap().accuracy, 1.0);
    }

    #[test]
    fn dimension_mismatch_mid_stream() {
        let a = hv("1100110011001100");
        let short = hv("1100");
        assert!(train_single_pass([(&a, "a"), (&short, "a")], tie16(), Metric::Hamming).is_err());
    }

    #[test]
    fn metric_parse() {
        assert_eq!("cosine".parse::<Metric>().unwrap(), Metric::Cosine);
        assert!("l2".parse::<Metric>().is_err());
    }
}
