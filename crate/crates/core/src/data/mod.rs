//! Dataset ingestion: MNIST IDX files, tab-separated text corpora and
//! synthetic Gaussian blobs.

mod idx;
mod synth;
mod text;

pub use idx::{
    load_idx_images, load_idx_labels, load_mnist, parse_idx_images, parse_idx_labels, write_idx_images,
    write_idx_labels, IdxImages, ImageDataset, Split,
};
pub use synth::{normal_vector, synth_blobs, Standardizer, SynthDataset};
pub use text::{load_tsv_corpus, normalize_text, parse_tsv_corpus, symbol_index, TextDataset, ALPHABET};
