use hdseed::data::*;
use proptest::prelude::*;

fn images() -> impl Strategy<Value = IdxImages> {
    (1usize..6, 1usize..9, 1usize..9).prop_flat_map(|(count, rows, cols)| {
        prop::collection::vec(any::<u8>(), count * rows * cols).prop_map(move |pixels| IdxImages {
            count,
            rows,
            cols,
            pixels,
        })
    })
}

proptest! {
    #[test]
    fn idx_round_trip(imgs in images()) {
        let labels: Vec<u8> = (0..imgs.count).map(|i| (i % 10) as u8).collect();
        let dir = tempfile::tempdir().unwrap();
        let (ip, lp) = (dir.path().join("img"), dir.path().join("lbl"));
        write_idx_images(&ip, &imgs).unwrap();
        write_idx_labels(&lp, &labels).unwrap();
        let bytes = std::fs::read(&ip).unwrap();
        prop_assert_eq!(&parse_idx_images(&bytes).unwrap(), &imgs);
        prop_assert_eq!(load_idx_labels(&lp).unwrap(), labels.clone());
        let ds = ImageDataset::load(&ip, &lp).unwrap();
        prop_assert_eq!(ds.len(), imgs.count);
        prop_assert_eq!(ds.image(imgs.count - 1), &imgs.pixels[(imgs.count - 1) * imgs.rows * imgs.cols..]);

        write_idx_images(dir.path().join("again"), &parse_idx_images(&bytes).unwrap()).unwrap();
        prop_assert_eq!(std::fs::read(dir.path().join("again")).unwrap(), bytes);
    }

    #[test]
    fn normalize_is_idempotent(raw in "\\PC{0,80}") {
        let once = normalize_text(&raw);
        prop_assert_eq!(normalize_text(&once), once.clone());
        prop_assert!(once.chars().all(|c| symbol_index(c).is_some()));
        prop_assert!(!once.starts_with(' ') && !once.ends_with(' ') && !once.contains("  "));
    }
}

#[test]
fn corpus_has_no_empty_samples() {
    let ds = parse_tsv_corpus("en\tHello, world!\nfr\t  ...  \n\nde\tGuten Tag\n").unwrap();
    assert_eq!(
        ds.samples,
        vec![
            ("en".to_string(), "hello world".to_string()),
            ("de".to_string(), "guten tag".to_string()),
        ]
    );
}
