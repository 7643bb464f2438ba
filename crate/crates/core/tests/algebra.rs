use hdseed::hdcore::bundle;
use hdseed::{Accumulator, Hypervector, Sign};
use proptest::prelude::*;

fn hv(dim: usize) -> impl Strategy<Value = Hypervector> {
    prop::collection::vec(any::<bool>(), dim).prop_map(|bits| Hypervector::from_bits(&bits))
}

fn pair() -> impl Strategy<Value = (Hypervector, Hypervector)> {
    (1usize..200).prop_flat_map(|d| (hv(d), hv(d)))
}

fn triple() -> impl Strategy<Value = (Hypervector, Hypervector, Hypervector)> {
    (1usize..200).prop_flat_map(|d| (hv(d), hv(d), hv(d)))
}

fn padding_clear(h: &Hypervector) -> bool {
    let tail = h.dim() % 64;
    tail == 0 || h.words().last().is_none_or(|w| w >> tail == 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bind_commutes((a, b) in pair()) {
        prop_assert_eq!(a.bind(&b).unwrap(), b.bind(&a).unwrap());
    }

    #[test]
    fn bind_associates((a, b, c) in triple()) {
        let left = a.bind(&b).unwrap().bind(&c).unwrap();
        let right = a.bind(&b.bind(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn bind_self_inverse((a, b) in pair()) {
        prop_assert_eq!(a.bind(&a).unwrap(), Hypervector::zeros(a.dim()));
        prop_assert_eq!(a.bind(&b).unwrap().bind(&b).unwrap(), a);
    }

    #[test]
    fn permute_group_action(a in (1usize..200).prop_flat_map(hv), j in -500i64..500, k in -500i64..500) {
        let d = a.dim() as i64;
        prop_assert_eq!(a.permute(j).weight(), a.weight());
        prop_assert_eq!(a.permute(j).permute(k), a.permute(j + k));
        prop_assert_eq!(a.permute(d), a.clone());
        prop_assert_eq!(a.permute(j).permute(-j), a.clone());
        prop_assert!(padding_clear(&a.permute(j)));
    }

    #[test]
    fn binding_preserves_distance((a, b, c) in triple()) {
        let ac = a.bind(&c).unwrap();
        let bc = b.bind(&c).unwrap();
        prop_assert_eq!(ac.hamming(&bc).unwrap(), a.hamming(&b).unwrap());
    }

    #[test]
    fn cosine_matches_bipolar_dot((a, b) in pair()) {
        let d = a.dim() as i64;
        let oracle: i64 = a
            .iter_bits()
            .zip(b.iter_bits())
            .map(|(x, y)| if x == y { 1 } else { -1 })
            .sum();
        let h = a.hamming(&b).unwrap() as i64;
        prop_assert_eq!(a.dot_bipolar(&b).unwrap(), oracle);
        prop_assert_eq!(a.cosine_bipolar(&b).unwrap(), (d - 2 * h) as f64 / d as f64);
    }

    #[test]
    fn odd_bundle_is_exact_majority(
        (hvs, tie) in (1usize..=64, 0usize..5).prop_flat_map(|(d, half)| {
            (prop::collection::vec(hv(d), 2 * half + 1), hv(d))
        })
    ) {
        let d = tie.dim();
        let oracle = Hypervector::from_fn(d, |i| {
            let ones = hvs.iter().filter(|h| h.get(i)).count();
            2 * ones > hvs.len()
        });
        prop_assert_eq!(bundle(&hvs, &tie).unwrap(), oracle.clone());

        let mut acc = Accumulator::new(d);
        for h in &hvs {
            acc.accumulate(h, Sign::Plus).unwrap();
        }
        prop_assert!(acc.counts().iter().all(|c| c.unsigned_abs() as usize <= hvs.len()));
        prop_assert_eq!(acc.binarize(&tie).unwrap(), oracle);
    }

    #[test]
    fn operations_keep_padding_clear((a, b) in pair(), k in -300i64..300) {
        prop_assert!(padding_clear(&a.bind(&b).unwrap()));
        prop_assert!(padding_clear(&a.complement()));
        prop_assert!(padding_clear(&a.permute(k)));
        prop_assert!(a.complement().weight() == a.dim() - a.weight());
    }
}
