use hdseed::model::{train_single_pass, ClassModel, Metric, Refresh};
use hdseed::Hypervector;
use proptest::prelude::*;

fn hv(dim: usize) -> impl Strategy<Value = Hypervector> {
    prop::collection::vec(any::<bool>(), dim).prop_map(|bits| Hypervector::from_bits(&bits))
}

fn labelled(dim: usize) -> impl Strategy<Value = Vec<(Hypervector, String)>> {
    prop::collection::vec((hv(dim), 0u8..4), 1..40)
        .prop_map(|v| v.into_iter().map(|(h, l)| (h, format!("c{l}"))).collect())
}

fn fit(samples: &[(Hypervector, String)], tie: &Hypervector, metric: Metric) -> ClassModel {
    train_single_pass(samples.iter().map(|(h, l)| (h, l.as_str())), tie.clone(), metric).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn single_pass_ignores_sample_order(
        (samples, tie, k) in (16usize..150).prop_flat_map(|d| (labelled(d), hv(d), any::<usize>()))
    ) {
        let a = fit(&samples, &tie, Metric::Hamming);
        let mut shuffled = samples.clone();
        let n = shuffled.len();
        shuffled.rotate_left(k % n);
        shuffled.reverse();
        let b = fit(&shuffled, &tie, Metric::Hamming);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hamming_and_dot_pick_the_same_label(
        (samples, tie, queries) in (16usize..150).prop_flat_map(|d| {
            (labelled(d), hv(d), prop::collection::vec(hv(d), 1..10))
        })
    ) {
        let ham = fit(&samples, &tie, Metric::Hamming);
        let dot = fit(&samples, &tie, Metric::Dot);
        for q in &queries {
            prop_assert_eq!(ham.classify(q).unwrap().0, dot.classify(q).unwrap().0);
        }
    }

    #[test]
    fn retraining_a_perfect_model_changes_nothing(
        (samples, tie) in (16usize..150).prop_flat_map(|d| (labelled(d), hv(d)))
    ) {
        let mut model = fit(&samples, &tie, Metric::Hamming);
        let correct: Vec<&(Hypervector, String)> = samples
            .iter()
            .filter(|(h, l)| model.classify(h).unwrap().0 == *l)
            .collect();
        let before = model.clone();
        for refresh in [Refresh::Online, Refresh::PerEpoch] {
            let errors = model
                .retrain_epoch(correct.iter().map(|(h, l)| (h, l.as_str())), refresh)
                .unwrap();
            prop_assert_eq!(errors, 0);
            prop_assert_eq!(&model, &before);
        }
    }

    #[test]
    fn persisted_model_round_trips(
        (samples, tie) in (16usize..150).prop_flat_map(|d| (labelled(d), hv(d))),
        metric in prop::sample::select(vec![Metric::Hamming, Metric::Cosine, Metric::Dot]),
    ) {
        let model = fit(&samples, &tie, metric);
        let back = ClassModel::from_bytes(&model.to_bytes().unwrap()).unwrap();
        prop_assert_eq!(back, model);
    }
}

#[test]
fn saved_model_classifies_identically() {
    let mut rng = hdseed::rng_from_seed(8);
    let tie = Hypervector::random(300, &mut rng);
    let samples: Vec<(Hypervector, String)> = (0..30)
        .map(|i| (Hypervector::random(300, &mut rng), format!("l{}", i % 3)))
        .collect();
    let model = fit(&samples, &tie, Metric::Cosine);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.hdmd");
    model.save(&path).unwrap();
    let back = ClassModel::load(&path).unwrap();
    for (h, _) in &samples {
        assert_eq!(back.classify(h).unwrap(), model.classify(h).unwrap());
    }
}
