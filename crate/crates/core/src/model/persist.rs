//! `HDMD1` model files: magic, `u32` LE dimension, `u8` metric, `u32` LE
//! class count, then per class a `u32` LE label length, the UTF-8 label, a
//! `u64` LE count of added vectors and `D` little-endian `i32` counters, and
//! finally the tie-break words.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use super::{ClassModel, Metric};
use crate::encode::u32_field;
use crate::hdcore::word_count;
use crate::{Accumulator, HdError, Hypervector, Result};

const MAGIC: &[u8; 5] = b"HDMD1";

fn metric_code(m: Metric) -> u8 {
    match m {
        Metric::Hamming => 0,
        Metric::Cosine => 1,
        Metric::Dot => 2,
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.at + n;
        let out = self.bytes.get(self.at..end).ok_or(HdError::Truncated {
            needed: end,
            got: self.bytes.len(),
        })?;
        self.at = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

impl ClassModel {
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&u32_field(self.dim)?.to_le_bytes());
        out.push(metric_code(self.metric));
        out.extend_from_slice(&u32_field(self.classes.len())?.to_le_bytes());
        for (label, acc) in &self.classes {
            out.extend_from_slice(&u32_field(label.len())?.to_le_bytes());
            out.extend_from_slice(label.as_bytes());
            out.extend_from_slice(&acc.added().to_le_bytes());
            for c in acc.counts() {
                out.extend_from_slice(&c.to_le_bytes());
            }
        }
        for w in self.tie_break.words() {
            out.extend_from_slice(&w.to_le_bytes());
        }
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, at: 0 };
        if r.take(5)? != MAGIC {
            return Err(HdError::Format("missing HDMD1 magic".into()));
        }
        let dim = r.u32()? as usize;
        if dim == 0 {
            return Err(HdError::Format("zero dimension".into()));
        }
        let metric = match r.take(1)?[0] {
            0 => Metric::Hamming,
            1 => Metric::Cosine,
            2 => Metric::Dot,
            m => return Err(HdError::Format(format!("unknown metric code {m}"))),
        };
        let n = r.u32()? as usize;
        let mut classes = BTreeMap::new();
        for _ in 0..n {
            let len = r.u32()? as usize;
            let label = std::str::from_utf8(r.take(len)?)
                .map_err(|e| HdError::Format(format!("label is not UTF-8: {e}")))?
                .to_string();
            let added = u64::from_le_bytes(r.take(8)?.try_into().unwrap());
            let counts = r
                .take(4 * dim)?
                .chunks_exact(4)
                .map(|b| i32::from_le_bytes(b.try_into().unwrap()))
                .collect();
            classes.insert(label, Accumulator::from_parts(counts, added)?);
        }
        let words = r
            .take(8 * word_count(dim))?
            .chunks_exact(8)
            .map(|b| u64::from_le_bytes(b.try_into().unwrap()))
            .collect();
        let tie = Hypervector::from_words(dim, words)?;
        if r.at != bytes.len() {
            return Err(HdError::Format(format!("{} trailing bytes", bytes.len() - r.at)));
        }
        ClassModel::from_accumulators(tie, metric, classes)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_bytes()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::train_single_pass;
    use crate::rng_from_seed;

    #[test]
    fn round_trip() {
        let mut rng = rng_from_seed(1);
        let xs: Vec<Hypervector> = (0..6).map(|_| Hypervector::random(100, &mut rng)).collect();
        let labels = ["zwei", "eins", "zwei", "drei", "eins", "eins"];
        let tie = Hypervector::random(100, &mut rng);
        let m = train_single_pass(xs.iter().zip(labels), tie, Metric::Cosine).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.hdmd");
        m.save(&path).unwrap();
        let back = ClassModel::load(&path).unwrap();
        assert_eq!(back.accumulators(), m.accumulators());
        assert_eq!(back.tie_break(), m.tie_break());
        assert_eq!(back.metric(), Metric::Cosine);
        assert_eq!(back.classify(&xs[3]).unwrap(), m.classify(&xs[3]).unwrap());

        let bytes = m.to_bytes().unwrap();
        assert_eq!(&bytes[..5], b"HDMD1");
        assert!(matches!(
            ClassModel::from_bytes(&bytes[..bytes.len() - 1]),
            Err(HdError::Truncated { .. })
        ));
        assert!(ClassModel::from_bytes(b"HDIM1").is_err());
    }
}
