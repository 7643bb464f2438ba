use std::fs;
use std::path::Path;

use crate::{HdError, Result};

/// The 27 text symbols: `a`..=`z` and space.
pub const ALPHABET: [char; 27] = [
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'p', 'q', 'r', 's', 't', 'u', 'v', 'w',
    'x', 'y', 'z', ' ',
];

/// Index into [`ALPHABET`]; `None` for anything else.
pub fn symbol_index(c: char) -> Option<usize> {
    match c {
        'a'..='z' => Some(c as usize - 'a' as usize),
        ' ' => Some(26),
        _ => None,
    }
}

/// Lowercases, maps every character outside `a`..=`z` to a space, collapses
/// runs of spaces and trims. Accented letters are not folded.
pub fn normalize_text(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for c in raw.chars().flat_map(char::to_lowercase) {
        if c.is_ascii_lowercase() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.push(c);
        } else {
            pending_space = true;
        }
    }
    out
}

/// Labelled text samples, all normalized to [`ALPHABET`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TextDataset {
    pub samples: Vec<(String, String)>,
}

impl TextDataset {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sorted distinct labels.
    pub fn labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = self.samples.iter().map(|s| s.0.clone()).collect();
        labels.sort();
        labels.dedup();
        labels
    }

    /// Keeps at most `limit` samples per label, in file order.
    pub fn limit_per_label(&mut self, limit: usize) {
        let mut seen = std::collections::HashMap::<String, usize>::new();
        self.samples.retain(|(label, _)| {
            let n = seen.entry(label.clone()).or_default();
            *n += 1;
            *n <= limit
        });
    }
}

/// Parses `label<TAB>text` lines. Blank lines and lines whose text
/// normalizes to nothing are skipped.
pub fn parse_tsv_corpus(content: &str) -> Result<TextDataset> {
    let mut samples = Vec::new();
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (label, text) = line.split_once('\t').ok_or_else(|| HdError::Parse {
            line: i + 1,
            message: "missing tab separator".into(),
        })?;
        let label = label.trim();
        if label.is_empty() {
            return Err(HdError::Parse {
                line: i + 1,
                message: "empty label".into(),
            });
        }
        let text = normalize_text(text);
        if !text.is_empty() {
            samples.push((label.to_string(), text));
        }
    }
    Ok(TextDataset { samples })
}

pub fn load_tsv_corpus(path: impl AsRef<Path>) -> Result<TextDataset> {
    parse_tsv_corpus(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_text("Hello, World!"), "hello world");
        assert_eq!(normalize_text(""), "");
        assert_eq!(normalize_text("  Grüße -- aus Köln  "), "gr e aus k ln");
        assert_eq!(normalize_text("ΑΒΓ abc 123 def"), "abc def");
        assert_eq!(normalize_text("L'ÉTÉ"), "l t");
    }

    #[test]
    fn alphabet_indices() {
        for (k, &c) in ALPHABET.iter().enumerate() {
            assert_eq!(symbol_index(c), Some(k));
        }
        assert_eq!(symbol_index('A'), None);
    }

    #[test]
    fn tsv_fixture() {
        let ds = parse_tsv_corpus("en\tThe cat.\n\nde\tDie Katze!\r\nen\tA dog\n").unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.samples[1], ("de".to_string(), "die katze".to_string()));
        assert_eq!(ds.labels(), vec!["de", "en"]);
    }

    #[test]
    fn tsv_missing_tab_reports_line() {
        let err = parse_tsv_corpus("en\tok\n\nno tab here\n").unwrap_err();
        assert!(matches!(err, HdError::Parse { line: 3, .. }));
    }

    #[test]
    fn limit_per_label() {
        let mut ds = parse_tsv_corpus("a\tx\na\ty\nb\tz\na\tw\n").unwrap();
        ds.limit_per_label(2);
        assert_eq!(ds.len(), 3);
    }
}
