use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::seq::SliceRandom;

use crate::hdcore::word_count;
use crate::seqgen::{BinaryCodeFamily, SequenceFamily, SequenceSource};
use crate::{derive_seed, rng_from_seed, HdError, Hypervector, Result};

/// How an item memory's hypervectors were produced; enough to rebuild it.
#[derive(Debug, Clone, PartialEq)]
pub enum MemorySource {
    Random {
        seed: u64,
    },
    /// Bit `j` of symbol `k` is `value(member_k, j) < threshold`.
    Sequence {
        family: SequenceFamily,
        threshold: f64,
    },
    BinaryCode(BinaryCodeFamily),
    /// Circular shifts of one random base vector.
    HoloGn {
        seed: u64,
        stride: usize,
    },
}

/// Symbol to hypervector store.
#[derive(Debug, Clone)]
pub struct ItemMemory {
    dim: usize,
    symbols: Vec<String>,
    hvs: Vec<Hypervector>,
    index: HashMap<String, usize>,
    source: Option<MemorySource>,
}

impl ItemMemory {
    pub fn build<S: AsRef<str>>(symbols: &[S], dim: usize, source: &MemorySource) -> Result<Self> {
        match source {
            MemorySource::Random { seed } => item_memory_random(symbols, dim, *seed),
            MemorySource::Sequence { family, threshold } => item_memory_from_sequence(symbols, dim, family, *threshold),
            MemorySource::BinaryCode(family) => {
                let hvs = family.hypervectors(symbols.len(), dim)?;
                Self::assemble(symbols, dim, hvs, Some(source.clone()))
            }
            MemorySource::HoloGn { seed, stride } => {
                let base = Hypervector::random(dim, &mut rng_from_seed(*seed));
                let hvs = hologn_items(&base, symbols.len(), *stride);
                Self::assemble(symbols, dim, hvs, Some(source.clone()))
            }
        }
    }

    /// Wraps existing hypervectors; symbols must be unique.
    pub fn from_parts<S: AsRef<str>>(symbols: &[S], hvs: Vec<Hypervector>) -> Result<Self> {
        let dim = hvs.first().map(Hypervector::dim).ok_or(HdError::Empty("item memory"))?;
        Self::assemble(symbols, dim, hvs, None)
    }

    fn assemble<S: AsRef<str>>(
        symbols: &[S],
        dim: usize,
        hvs: Vec<Hypervector>,
        source: Option<MemorySource>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(HdError::invalid("dimension must be >= 1"));
        }
        if symbols.len() != hvs.len() {
            return Err(HdError::LengthMismatch {
                left: symbols.len(),
                right: hvs.len(),
            });
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (k, s) in symbols.iter().enumerate() {
            if hvs[k].dim() != dim {
                return Err(HdError::DimensionMismatch {
                    expected: dim,
                    found: hvs[k].dim(),
                });
            }
            if index.insert(s.as_ref().to_string(), k).is_some() {
                return Err(HdError::invalid(format!("duplicate symbol {:?}", s.as_ref())));
            }
        }
        Ok(Self {
            dim,
            symbols: symbols.iter().map(|s| s.as_ref().to_string()).collect(),
            hvs,
            index,
            source,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hvs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hvs.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn hypervectors(&self) -> &[Hypervector] {
        &self.hvs
    }

    pub fn source(&self) -> Option<&MemorySource> {
        self.source.as_ref()
    }

    pub fn get(&self, symbol: &str) -> Option<&Hypervector> {
        self.index.get(symbol).map(|&k| &self.hvs[k])
    }

    pub fn position(&self, symbol: &str) -> Option<usize> {
        self.index.get(symbol).copied()
    }

    /// Panics if `k >= len()`.
    pub fn by_index(&self, k: usize) -> &Hypervector {
        &self.hvs[k]
    }

    /// Writes the rows as an `HDIM1` file (symbols are not stored).
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        write_hypervectors(path, &self.hvs)
    }

    /// Reads an `HDIM1` file; symbols default to `"0"`, `"1"`, ...
    pub fn load(path: impl AsRef<Path>, symbols: Option<&[String]>) -> Result<Self> {
        let hvs = read_hypervectors(path)?;
        match symbols {
            Some(s) => Self::from_parts(s, hvs),
            None => {
                let names: Vec<String> = (0..hvs.len()).map(|k| k.to_string()).collect();
                Self::from_parts(&names, hvs)
            }
        }
    }
}

/// i.i.d. Bernoulli(1/2) hypervector per symbol, each on its own derived stream.
pub fn item_memory_random<S: AsRef<str>>(symbols: &[S], dim: usize, seed: u64) -> Result<ItemMemory> {
    let hvs = (0..symbols.len())
        .map(|k| Hypervector::random(dim, &mut rng_from_seed(derive_seed(seed, k as u64))))
        .collect();
    ItemMemory::assemble(symbols, dim, hvs, Some(MemorySource::Random { seed }))
}

/// One family member per symbol; bit `j` is set when the member's `j`-th
/// value is below `threshold`.
pub fn item_memory_from_sequence<S: AsRef<str>>(
    symbols: &[S],
    dim: usize,
    family: &SequenceFamily,
    threshold: f64,
) -> Result<ItemMemory> {
    let members = family.members(symbols.len(), dim)?;
    let hvs = members
        .iter()
        .map(|src| threshold_hypervector(src, dim, threshold))
        .collect::<Result<Vec<_>>>()?;
    ItemMemory::assemble(
        symbols,
        dim,
        hvs,
        Some(MemorySource::Sequence {
            family: family.clone(),
            threshold,
        }),
    )
}

/// Bit `j` set iff `value(src, j) < threshold`.
pub fn threshold_hypervector(src: &SequenceSource, dim: usize, threshold: f64) -> Result<Hypervector> {
    let values = src.sample(dim)?;
    Ok(Hypervector::from_fn(dim, |j| values[j] < threshold))
}

/// `count` circular shifts of `base`: item `k` is `permute(base, k * stride)`.
pub fn hologn_items(base: &Hypervector, count: usize, stride: usize) -> Vec<Hypervector> {
    (0..count)
        .map(|k| base.permute((k as i64).wrapping_mul(stride as i64)))
        .collect()
}

/// Ordinal level hypervectors with exactly linear inter-level distance.
#[derive(Debug, Clone)]
pub struct LevelMemory {
    chain: Vec<Hypervector>,
    flips: Vec<Vec<usize>>,
}

impl LevelMemory {
    /// Random start vector, then `levels - 1` disjoint blocks taken from one
    /// permutation of `h = floor(D/2)` indices; step `i` flips block `i`.
    /// Level `i` sits `floor(i * h / (levels - 1))` flips from the start, so
    /// every pairwise distance is within one bit of linear.
    pub fn flip_chain(dim: usize, levels: usize, seed: u64) -> Result<Self> {
        if levels < 2 {
            return Err(HdError::invalid(format!("need at least 2 levels, got {levels}")));
        }
        if dim < 2 * (levels - 1) {
            return Err(HdError::invalid(format!(
                "dimension {dim} too small for {levels} levels"
            )));
        }
        let mut rng = rng_from_seed(seed);
        let start = Hypervector::random(dim, &mut rng);
        let mut order: Vec<usize> = (0..dim).collect();
        order.shuffle(&mut rng);
        order.truncate(dim / 2);

        let steps = levels - 1;
        let half = order.len();
        let mut flips = Vec::with_capacity(steps);
        let mut chain = Vec::with_capacity(levels);
        chain.push(start);
        for i in 0..steps {
            let block = order[i * half / steps..(i + 1) * half / steps].to_vec();
            let mut next = chain[i].clone();
            for &j in &block {
                next.flip(j);
            }
            chain.push(next);
            flips.push(block);
        }
        Ok(Self { chain, flips })
    }

    pub fn dim(&self) -> usize {
        self.chain[0].dim()
    }

    pub fn levels(&self) -> usize {
        self.chain.len()
    }

    pub fn chain(&self) -> &[Hypervector] {
        &self.chain
    }

    /// Indices flipped between level `i` and `i + 1`.
    pub fn flips(&self) -> &[Vec<usize>] {
        &self.flips
    }

    /// Panics if `i >= levels()`.
    pub fn get(&self, i: usize) -> &Hypervector {
        &self.chain[i]
    }

    /// Nearest level for `value` in `[0, 1]` (clamped).
    pub fn level_index(&self, value: f64) -> usize {
        let top = (self.levels() - 1) as f64;
        (value.clamp(0.0, 1.0) * top).round() as usize
    }

    pub fn encode(&self, value: f64) -> &Hypervector {
        &self.chain[self.level_index(value)]
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        write_hypervectors(path, &self.chain)
    }
}

const HDIM_MAGIC: &[u8; 5] = b"HDIM1";

/// `HDIM1` layout: magic, `u32` LE dimension, `u32` LE row count, then each
/// row as `ceil(D/64)` little-endian `u64` words.
pub fn write_hypervectors(path: impl AsRef<Path>, hvs: &[Hypervector]) -> Result<()> {
    let dim = hvs
        .first()
        .map(Hypervector::dim)
        .ok_or(HdError::Empty("hypervector list"))?;
    let mut out = BufWriter::new(File::create(path)?);
    out.write_all(HDIM_MAGIC)?;
    out.write_all(&u32_field(dim)?.to_le_bytes())?;
    out.write_all(&u32_field(hvs.len())?.to_le_bytes())?;
    for hv in hvs {
        if hv.dim() != dim {
            return Err(HdError::DimensionMismatch {
                expected: dim,
                found: hv.dim(),
            });
        }
        for w in hv.words() {
            out.write_all(&w.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_hypervectors(path: impl AsRef<Path>) -> Result<Vec<Hypervector>> {
    let mut bytes = Vec::new();
    BufReader::new(File::open(path)?).read_to_end(&mut bytes)?;
    let header = HDIM_MAGIC.len() + 8;
    if bytes.len() < header {
        return Err(HdError::Truncated {
            needed: header,
            got: bytes.len(),
        });
    }
    if &bytes[..5] != HDIM_MAGIC {
        return Err(HdError::Format("missing HDIM1 magic".into()));
    }
    let dim = u32::from_le_bytes(bytes[5..9].try_into().unwrap()) as usize;
    let count = u32::from_le_bytes(bytes[9..13].try_into().unwrap()) as usize;
    if dim == 0 {
        return Err(HdError::Format("zero dimension".into()));
    }
    let words = word_count(dim);
    let needed = header + count * words * 8;
    if bytes.len() != needed {
        return Err(HdError::Truncated {
            needed,
            got: bytes.len(),
        });
    }
    bytes[header..]
        .chunks_exact(words * 8)
        .map(|row| {
            let ws = row
                .chunks_exact(8)
                .map(|b| u64::from_le_bytes(b.try_into().unwrap()))
                .collect();
            Hypervector::from_words(dim, ws)
        })
        .collect()
}

pub(crate) fn u32_field(n: usize) -> Result<u32> {
    u32::try_from(n).map_err(|_| HdError::invalid(format!("{n} does not fit in u32")))
}
