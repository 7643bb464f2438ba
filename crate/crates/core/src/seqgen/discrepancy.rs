use super::PointSet;

/// Squared centered L2 discrepancy (Hickernell), the closed form
///
/// ```text
/// (13/12)^d
///   - 2/n     sum_i     prod_k (1 + |z_ik|/2 - z_ik^2/2)
///   + 1/n^2   sum_i,j   prod_k (1 + |z_ik|/2 + |z_jk|/2 - |x_ik - x_jk|/2)
/// ```
///
/// with `z = x - 1/2`. Cost is `O(n^2 d)`.
pub fn centered_l2_discrepancy_squared(ps: &PointSet) -> f64 {
    let n = ps.len();
    if n == 0 {
        return 0.0;
    }
    let d = ps.dims();
    let mut single = 0.0;
    for p in ps.points() {
        single += p
            .iter()
            .map(|&x| {
                let z = (x - 0.5).abs();
                1.0 + 0.5 * z - 0.5 * z * z
            })
            .product::<f64>();
    }
    let mut pair = 0.0;
    for i in 0..n {
        let pi = ps.point(i);
        for j in 0..n {
            let pj = ps.point(j);
            pair += (0..d)
                .map(|k| 1.0 + 0.5 * (pi[k] - 0.5).abs() + 0.5 * (pj[k] - 0.5).abs() - 0.5 * (pi[k] - pj[k]).abs())
                .product::<f64>();
        }
    }
    let n = n as f64;
    ((13.0f64 / 12.0).powi(d as i32) - 2.0 / n * single + pair / (n * n)).max(0.0)
}

/// Centered L2 discrepancy; lower means more uniform.
pub fn centered_l2_discrepancy(ps: &PointSet) -> f64 {
    centered_l2_discrepancy_squared(ps).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centre_point() {
        // (13/12)^2 - 2 + 1 = 25/144
        let ps = PointSet::new(1, 2, vec![0.5, 0.5]).unwrap();
        assert!((centered_l2_discrepancy_squared(&ps) - 25.0 / 144.0).abs() < 1e-15);
        assert!((centered_l2_discrepancy(&ps) - 5.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn order_invariant() {
        let a = PointSet::new(3, 2, vec![0.1, 0.7, 0.4, 0.2, 0.9, 0.55]).unwrap();
        let b = PointSet::new(3, 2, vec![0.9, 0.55, 0.1, 0.7, 0.4, 0.2]).unwrap();
        let (da, db) = (centered_l2_discrepancy(&a), centered_l2_discrepancy(&b));
        assert!((da - db).abs() < 1e-15);
    }
}
