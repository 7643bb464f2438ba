use crate::hdcore::bundle;
use crate::{BitSliceCounter, HdError, Hypervector, Result};

/// `binarize(sum_i L_i XOR P_i)`.
pub fn record_encode(
    levels: &[Hypervector],
    positions: &[Hypervector],
    tie_break: &Hypervector,
) -> Result<Hypervector> {
    if levels.len() != positions.len() {
        return Err(HdError::LengthMismatch {
            left: levels.len(),
            right: positions.len(),
        });
    }
    if levels.is_empty() {
        return Err(HdError::Empty("record"));
    }
    let mut counter = BitSliceCounter::new(tie_break.dim());
    for (l, p) in levels.iter().zip(positions) {
        counter.add_bound(l, p)?;
    }
    counter.majority(tie_break)
}

/// `L_1 XOR pi(L_2) XOR ... XOR pi^(N-1)(L_N)`.
pub fn ngram_encode(levels: &[Hypervector]) -> Result<Hypervector> {
    let (first, rest) = levels.split_first().ok_or(HdError::Empty("n-gram"))?;
    let mut out = first.clone();
    for (k, hv) in rest.iter().enumerate() {
        out.bind_assign(&hv.permute(k as i64 + 1))?;
    }
    Ok(out)
}

/// `binarize(sum_t pi^t(H_t))` with `t` counted from 1.
pub fn permute_sum_encode(hvs: &[Hypervector], tie_break: &Hypervector) -> Result<Hypervector> {
    let permuted: Vec<Hypervector> = hvs.iter().enumerate().map(|(t, hv)| hv.permute(t as i64 + 1)).collect();
    bundle(&permuted, tie_break)
}

/// `binarize(sum_n L_n)`: plain bundling of per-feature level vectors.
pub fn level_sum_encode(level_hvs: &[Hypervector], tie_break: &Hypervector) -> Result<Hypervector> {
    bundle(level_hvs, tie_break)
}

/// `pi^u(A) XOR pi^v(B)`. Integer powers are rotations because a power of
/// an XOR-bound vector would collapse (`A XOR A = 0`).
pub fn fractional_power_encode(a: &Hypervector, b: &Hypervector, u: u64, v: u64) -> Result<Hypervector> {
    a.permute(u as i64).bind(&b.permute(v as i64))
}

/// Row-major grid codes: cell `(row, col)` is `fractional_power_encode(A, B, col, row)`.
pub fn grid_positions(a: &Hypervector, b: &Hypervector, rows: usize, cols: usize) -> Result<Vec<Hypervector>> {
    let mut out = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            out.push(fractional_power_encode(a, b, c as u64, r as u64)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng_from_seed;

    fn hv(s: &str) -> Hypervector {
        Hypervector::from_bitstring(s).unwrap()
    }

    fn majority3(a: &str, b: &str, c: &str) -> Hypervector {
        let bits: Vec<bool> = a
            .chars()
            .zip(b.chars())
            .zip(c.chars())
            .map(|((x, y), z)| [x, y, z].iter().filter(|&&ch| ch == '1').count() >= 2)
            .collect();
        Hypervector::from_bits(&bits)
    }

    #[test]
    fn record_single_pair_is_bind() {
        let l = hv("10110010");
        let p = hv("01110100");
        let tie = Hypervector::zeros(8);
        let out = record_encode(std::slice::from_ref(&l), std::slice::from_ref(&p), &tie).unwrap();
        assert_eq!(out, l.bind(&p).unwrap());
        let rep = record_encode(
            &[l.clone(), l.clone(), l.clone()],
            &[p.clone(), p.clone(), p.clone()],
            &tie,
        )
        .unwrap();
        assert_eq!(rep, l.bind(&p).unwrap());
    }

    #[test]
    fn record_toy_majority() {
        // bound pairs: 11000011, 10101010, 00001111
        let levels = [hv("11110000"), hv("00110011"), hv("01010101")];
        let positions = [hv("00110011"), hv("10011001"), hv("01011010")];
        let out = record_encode(&levels, &positions, &Hypervector::zeros(8)).unwrap();
        assert_eq!(out, majority3("11000011", "10101010", "00001111"));
        assert_eq!(out, hv("10001011"));
        assert!(record_encode(&levels, &positions[..2], &Hypervector::zeros(8)).is_err());
    }

    #[test]
    fn ngram_examples() {
        let a = hv("10010000");
        assert_eq!(ngram_encode(std::slice::from_ref(&a)).unwrap(), a);
        assert_eq!(
            ngram_encode(&[a.clone(), a.clone()]).unwrap(),
            a.bind(&a.permute(1)).unwrap()
        );
        // 10010000 ^ pi(01100000)=00110000 ^ pi^2(00000011)=11000000
        let out = ngram_encode(&[a, hv("01100000"), hv("00000011")]).unwrap();
        assert_eq!(out, hv("01100000"));
        assert!(ngram_encode(&[]).is_err());
    }

    #[test]
    fn ngram_order_sensitive() {
        let mut rng = rng_from_seed(5);
        let (a, b, c) = (
            Hypervector::random(10_000, &mut rng),
            Hypervector::random(10_000, &mut rng),
            Hypervector::random(10_000, &mut rng),
        );
        let abc = ngram_encode(&[a.clone(), b.clone(), c.clone()]).unwrap();
        let acb = ngram_encode(&[a, c, b]).unwrap();
        let sim = abc.similarity_hamming(&acb).unwrap();
        assert!((0.45..=0.55).contains(&sim), "{sim}");
    }

    #[test]
    fn permute_sum_examples() {
        let h = hv("11010000");
        let tie = Hypervector::zeros(8);
        assert_eq!(
            permute_sum_encode(std::slice::from_ref(&h), &tie).unwrap(),
            h.permute(1)
        );
        // permuted: pi(11010000)=01101000, pi^2(10000001)=01100000, pi^3(00011111)=11100011
        let out = permute_sum_encode(&[h, hv("10000001"), hv("00011111")], &tie).unwrap();
        assert_eq!(out, majority3("01101000", "01100000", "11100011"));
    }

    #[test]
    fn level_sum_examples() {
        let a = hv("1100");
        let tie = Hypervector::zeros(4);
        assert_eq!(level_sum_encode(std::slice::from_ref(&a), &tie).unwrap(), a);
        assert_eq!(level_sum_encode(&[a.clone(), a.clone()], &tie).unwrap(), a);
        let out = level_sum_encode(&[hv("1100"), hv("1010"), hv("0111")], &tie).unwrap();
        assert_eq!(out, hv("1110"));
    }

    #[test]
    fn fractional_power_examples() {
        let a = hv("10000000");
        let b = hv("11000000");
        assert_eq!(fractional_power_encode(&a, &b, 0, 0).unwrap(), a.bind(&b).unwrap());
        let grid = grid_positions(&a, &b, 2, 2).unwrap();
        assert_eq!(grid[0], hv("01000000"));
        assert_eq!(grid[1], hv("10000000")); // u=1: 01000000 ^ 11000000
        assert_eq!(grid[2], hv("11100000")); // v=1: 10000000 ^ 01100000
        assert_eq!(grid[3], hv("00100000"));
        let w1 = fractional_power_encode(&a, &b, 3, 1).unwrap();
        let w2 = fractional_power_encode(&a, &b, 3, 5).unwrap();
        assert_eq!(w1.bind(&w2).unwrap(), b.permute(1).bind(&b.permute(5)).unwrap());
    }
}
