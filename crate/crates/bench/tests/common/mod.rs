#![allow(dead_code)]

use std::path::Path;

use hdseed::data::{write_idx_images, write_idx_labels, IdxImages};
use hdseed::rng_from_seed;
use rand::Rng;

/// Writes a small MNIST-shaped dataset under `root/mnist`: 12x12 images of
/// three noisy stroke patterns.
pub fn write_toy_mnist(root: &Path, train: usize, test: usize) {
    let dir = root.join("mnist");
    std::fs::create_dir_all(&dir).unwrap();
    let mut rng = rng_from_seed(77);
    let (rows, cols) = (12, 12);
    let mut split = |n: usize, stem: &str| {
        let mut pixels = Vec::with_capacity(n * rows * cols);
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            let label = (i % 3) as u8;
            for r in 0..rows {
                for c in 0..cols {
                    let on = match label {
                        0 => r == rows / 2 || r == rows / 2 + 1,
                        1 => c == cols / 2 || c == cols / 2 + 1,
                        _ => r == c || r + 1 == c,
                    };
                    let noise: u8 = rng.random_range(0..40);
                    pixels.push(if on { 255 - noise } else { noise });
                }
            }
            labels.push(label);
        }
        let images = IdxImages {
            count: n,
            rows,
            cols,
            pixels,
        };
        write_idx_images(dir.join(format!("{stem}-images-idx3-ubyte")), &images).unwrap();
        write_idx_labels(dir.join(format!("{stem}-labels-idx1-ubyte")), &labels).unwrap();
    };
    split(train, "train");
    split(test, "t10k");
}

/// Writes `root/lang/{train,test}.tsv` from `(label, text)` rows.
pub fn write_lang(root: &Path, train: &[(&str, &str)], test: &[(&str, &str)]) {
    let dir = root.join("lang");
    std::fs::create_dir_all(&dir).unwrap();
    let tsv = |rows: &[(&str, &str)]| rows.iter().map(|(l, t)| format!("{l}\t{t}\n")).collect::<String>();
    std::fs::write(dir.join("train.tsv"), tsv(train)).unwrap();
    std::fs::write(dir.join("test.tsv"), tsv(test)).unwrap();
}

/// The workspace `data/` directory when both datasets are present.
pub fn real_data() -> Option<std::path::PathBuf> {
    let root = std::env::var_os("HDSEED_DATA_DIR")
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"));
    let mnist = root.join("mnist");
    let ok = (mnist.join("train-images-idx3-ubyte").exists() || mnist.join("train-images.idx3-ubyte").exists())
        && root.join("lang/train.tsv").exists();
    ok.then_some(root)
}
