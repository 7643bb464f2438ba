mod common;

use hdseed_bench::config::{EncoderKind, LevelEncoderKind, MetricArg, PosEncoder, RunConfig, SeqKind, Task};
use hdseed_bench::{run, BenchReport};

fn cfg(task: Task, root: &std::path::Path) -> RunConfig {
    let mut c = RunConfig::new(task);
    c.data_dir = Some(root.to_path_buf());
    c
}

#[test]
fn synth_rbf_separates_blobs() {
    let dir = tempfile::tempdir().unwrap();
    let report = run(&cfg(Task::Synth, dir.path())).unwrap();
    assert!(report.accuracy.mean > 0.95, "{}", report.accuracy.mean);
    assert_eq!(report.train_samples, 800);
}

#[test]
fn synth_level_encoders_learn() {
    let dir = tempfile::tempdir().unwrap();
    for (encoder, seq) in [
        (EncoderKind::Levelsum, SeqKind::Sobol),
        (EncoderKind::Levelsum, SeqKind::Random),
        (EncoderKind::Levelsum, SeqKind::Hadamard),
        (EncoderKind::Thermometer, SeqKind::Sobol),
    ] {
        let mut c = cfg(Task::Synth, dir.path());
        c.encoder = encoder;
        c.seq = seq;
        let acc = run(&c).unwrap().accuracy.mean;
        assert!(acc > 0.9, "{encoder:?}/{seq}: {acc}");
    }
}

#[test]
fn single_language_corpus_is_perfect() {
    let dir = tempfile::tempdir().unwrap();
    common::write_lang(
        dir.path(),
        &[("en", "the quick brown fox"), ("en", "jumps over the lazy dog")],
        &[("en", "a fox and a dog"), ("en", "x")],
    );
    for seq in [SeqKind::Sobol, SeqKind::Random, SeqKind::Kasami] {
        let mut c = cfg(Task::Lang, dir.path());
        c.seq = seq;
        assert_eq!(run(&c).unwrap().accuracy.mean, 1.0, "{seq}");
    }
}

#[test]
fn toy_images_are_learned() {
    let dir = tempfile::tempdir().unwrap();
    common::write_toy_mnist(dir.path(), 60, 30);
    for seq in [SeqKind::Sobol, SeqKind::Random, SeqKind::Hadamard, SeqKind::Gold] {
        let mut c = cfg(Task::Mnist, dir.path());
        c.seq = seq;
        let r = run(&c).unwrap();
        assert!(r.accuracy.mean > 0.9, "{seq}: {}", r.accuracy.mean);
        assert_eq!(r.confusion.labels, vec!["0", "1", "2"]);
        assert_eq!(r.orthogonality.as_ref().unwrap().vectors, 144);
    }
    let mut c = cfg(Task::Mnist, dir.path());
    c.level_encoder = LevelEncoderKind::Flipchain;
    c.levels = 16;
    c.metric = MetricArg::Cosine;
    c.epochs = 2;
    assert!(run(&c).unwrap().accuracy.mean > 0.9);
}

#[test]
fn fracpow_positions_run() {
    let dir = tempfile::tempdir().unwrap();
    common::write_toy_mnist(dir.path(), 30, 9);
    let mut c = cfg(Task::Mnist, dir.path());
    c.seq = SeqKind::Random;
    c.pos_encoder = PosEncoder::Fracpow;
    let r = run(&c).unwrap();
    assert_eq!(r.test_samples, 9);
    assert!((0.0..=1.0).contains(&r.accuracy.mean));
}

#[test]
fn deterministic_source_repeats_across_iterations() {
    let dir = tempfile::tempdir().unwrap();
    common::write_toy_mnist(dir.path(), 30, 30);
    let mut c = cfg(Task::Mnist, dir.path());
    c.iterations = 2;
    let r = run(&c).unwrap();
    assert_eq!(r.accuracy.runs[0], r.accuracy.runs[1]);
    assert_eq!(r.accuracy.std, 0.0);
}

#[test]
fn random_iterations_draw_new_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = cfg(Task::Synth, dir.path());
    c.seq = SeqKind::Random;
    c.encoder = EncoderKind::Levelsum;
    c.dim = 64;
    c.iterations = 4;
    let r = run(&c).unwrap();
    assert_eq!(r.accuracy.runs.len(), 4);
    assert!(
        r.accuracy.runs.windows(2).any(|w| w[0] != w[1]),
        "{:?}",
        r.accuracy.runs
    );
}

#[test]
fn masked_reports_are_byte_identical_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    common::write_toy_mnist(dir.path(), 30, 12);
    let mut c = cfg(Task::Mnist, dir.path());
    c.seq = SeqKind::Halton;
    c.dim = 256;
    let once = || {
        let mut r = run(&c).unwrap();
        r.mask_timing();
        r.to_json().unwrap()
    };
    let a = once();
    assert_eq!(a, once());
    let back = BenchReport::from_json(&a).unwrap();
    assert_eq!(back.to_json().unwrap(), a);
}

#[test]
fn missing_data_names_the_fetch_script() {
    let dir = tempfile::tempdir().unwrap();
    let err = run(&cfg(Task::Mnist, dir.path())).unwrap_err();
    assert!(format!("{err:#}").contains("fetch_mnist"), "{err:#}");
    let err = run(&cfg(Task::Lang, dir.path())).unwrap_err();
    assert!(format!("{err:#}").contains("build_lang_corpus"), "{err:#}");
}

#[test]
fn longer_ngrams_help_on_the_desk_corpus() {
    let Some(root) = common::real_data() else {
        eprintln!("skipping: datasets not present (see scripts/)");
        return;
    };
    let acc = |n: usize| {
        let mut c = cfg(Task::Lang, &root);
        c.seq = SeqKind::Random;
        c.dim = 4096;
        c.ngram = n;
        run(&c).unwrap().accuracy.mean
    };
    let (one, four) = (acc(1), acc(4));
    assert!(one < four, "N=1 {one} vs N=4 {four}");
}
