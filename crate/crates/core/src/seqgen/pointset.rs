use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::{HdError, Result};

/// `n` points in the unit cube `[0, 1)^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    n: usize,
    d: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(n: usize, d: usize, coords: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(HdError::invalid("point set needs at least one coordinate"));
        }
        if coords.len() != n * d {
            return Err(HdError::LengthMismatch {
                left: coords.len(),
                right: n * d,
            });
        }
        if let Some(bad) = coords.iter().find(|x| !(0.0..1.0).contains(*x)) {
            return Err(HdError::invalid(format!("coordinate {bad} outside [0, 1)")));
        }
        Ok(Self { n, d, coords })
    }

    /// Builds a point set from per-dimension columns of equal length.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let d = columns.len();
        let n = columns.first().map_or(0, Vec::len);
        if let Some(c) = columns.iter().find(|c| c.len() != n) {
            return Err(HdError::LengthMismatch {
                left: c.len(),
                right: n,
            });
        }
        let mut coords = Vec::with_capacity(n * d);
        for i in 0..n {
            coords.extend(columns.iter().map(|c| c[i]));
        }
        Self::new(n, d, coords)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dims(&self) -> usize {
        self.d
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks(self.d)
    }

    pub fn column(&self, k: usize) -> Vec<f64> {
        self.points().map(|p| p[k]).collect()
    }

    /// Writes a 2-D point set as CSV: header `x,y`, then one point per line
    /// with 17 significant digits (enough to round-trip every `f64`).
    pub fn write_scatter_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        if self.d != 2 {
            return Err(HdError::invalid(format!(
                "scatter export needs 2-D points, got {}-D",
                self.d
            )));
        }
        let mut out = BufWriter::new(fs::File::create(path)?);
        writeln!(out, "x,y")?;
        for p in self.points() {
            writeln!(out, "{},{}", sig17(p[0]), sig17(p[1]))?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_scatter_csv(path: impl AsRef<Path>) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let mut lines = text.lines();
        match lines.next() {
            Some("x,y") => {}
            other => {
                return Err(HdError::Parse {
                    line: 1,
                    message: format!("expected header `x,y`, found {other:?}"),
                })
            }
        }
        let mut coords = Vec::new();
        for (k, line) in lines.enumerate() {
            let (x, y) = line.split_once(',').ok_or_else(|| HdError::Parse {
                line: k + 2,
                message: "missing comma".into(),
            })?;
            for field in [x, y] {
                coords.push(field.trim().parse::<f64>().map_err(|e| HdError::Parse {
                    line: k + 2,
                    message: e.to_string(),
                })?);
            }
        }
        Self::new(coords.len() / 2, 2, coords)
    }
}

/// Plain decimal with 17 significant digits.
fn sig17(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.16}", 0.0);
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (16 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_roundtrips() {
        for x in [0.0, 0.5, 0.1, 1.0 / 3.0, 0.000123456789, 0.999999999999] {
            let s = sig17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(sig17(0.5), "0.50000000000000000");
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(PointSet::new(1, 2, vec![0.5, 1.0]).is_err());
        assert!(PointSet::new(2, 2, vec![0.5, 0.1]).is_err());
    }

    #[test]
    fn columns_interleave() {
        let ps = PointSet::from_columns(&[vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        assert_eq!(ps.point(1), &[0.2, 0.4]);
        assert_eq!(ps.column(1), vec![0.3, 0.4]);
    }
}
