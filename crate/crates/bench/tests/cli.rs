mod common;

use std::process::{Command, Output};

use hdseed::encode::ItemMemory;
use hdseed::seqgen::{PointSet, SequenceFamily};
use hdseed_bench::BenchReport;

fn hdseed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdseed"))
        .args(args)
        .env_remove("HDSEED_DATA_DIR")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn masked_bench_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    common::write_toy_mnist(dir.path(), 30, 15);
    let root = dir.path().to_str().unwrap();
    let args = [
        "--threads",
        "2",
        "bench",
        "mnist",
        "--dim",
        "512",
        "--seq",
        "sobol",
        "--mask-timing",
        "--data-dir",
        root,
    ];
    let a = stdout(&hdseed(&args));
    assert_eq!(a, stdout(&hdseed(&args)));
    let report = BenchReport::from_json(&a).unwrap();
    assert_eq!(report.timing.encode_s, 0.0);
    assert_eq!(report.config.dim, 512);
}

#[test]
fn data_dir_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    common::write_lang(dir.path(), &[("en", "hello"), ("de", "hallo welt")], &[("de", "welt")]);
    let out = Command::new(env!("CARGO_BIN_EXE_hdseed"))
        .args(["bench", "lang", "--output", "csv"])
        .env("HDSEED_DATA_DIR", dir.path())
        .output()
        .unwrap();
    let text = stdout(&out);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rows.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, hdseed_bench::report::CSV_HEADER);
    assert!(rows.records().any(|r| r.unwrap().get(8) == Some("accuracy_mean")));
}

#[test]
fn report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = hdseed(&["bench", "synth", "--dim", "256", "--out", path.to_str().unwrap()]);
    assert!(stdout(&out).is_empty());
    let report = BenchReport::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.accuracy.mean > 0.9);
}

#[test]
fn scatter_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sobol.csv");
    stdout(&hdseed(&[
        "gen",
        "seq",
        "--seq",
        "sobol",
        "--count",
        "128",
        "--out",
        path.to_str().unwrap(),
    ]));
    let ps = PointSet::read_scatter_csv(&path).unwrap();
    assert_eq!(ps, SequenceFamily::Sobol.point_set(128, 2).unwrap());
}

#[test]
fn code_words_print_as_bits() {
    let text = stdout(&hdseed(&[
        "gen", "seq", "--seq", "hadamard", "--count", "3", "--dim", "8",
    ]));
    assert_eq!(text, "01010101\n00110011\n01100110\n");
}

#[test]
fn inspect_reports_orthogonality_and_saves() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mem.hdim");
    let text = stdout(&hdseed(&[
        "inspect",
        "memory",
        "--seq",
        "sobol",
        "--dim",
        "256",
        "--count",
        "27",
        "--save",
        path.to_str().unwrap(),
    ]));
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["orthogonality"]["max_abs_cosine"], 0.0);
    assert!(json["discrepancy"].as_f64().unwrap() > 0.0);
    assert_eq!(ItemMemory::load(&path, None).unwrap().len(), 27);
}

#[test]
fn bad_arguments_fail_cleanly() {
    for args in [
        &["bench", "synth", "--dim", "32"][..],
        &["bench", "lang", "--encoder", "rbf"],
        &["bench", "synth", "--seq", "nope"],
        &["gen", "seq", "--seq", "r2", "--dims", "3"],
    ] {
        let out = hdseed(args);
        assert!(!out.status.success(), "{args:?} succeeded");
        assert!(!out.stderr.is_empty());
    }
}
