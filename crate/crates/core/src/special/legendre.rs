//! Gauss-Legendre nodes and weights on [-1, 1] (Newton on the recurrence).

use crate::scalar::{fl, Scalar};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre<S: Scalar>(n: usize) -> (Vec<S>, Vec<S>) {
    assert!(n >= 2, "gauss_legendre: need n >= 2");
    let mut nodes = vec![S::zero(); n];
    let mut weights = vec![S::zero(); n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi-style initial guess
        let mut x = fl::<S>((std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos());
        let mut dp = S::one();
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by upward recurrence
            let mut p0 = S::one();
            let mut p1 = x;
            for k in 2..=n {
                let kf = fl::<S>(k as f64);
                let p2 = ((fl::<S>(2.0) * kf - S::one()) * x * p1 - (kf - S::one()) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = fl::<S>(nf) * (x * p1 - p0) / (x * x - S::one());
            let dx = p1 / dp;
            x = x - dx;
            if dx.abs() <= S::epsilon() * fl::<S>(4.0) {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = fl::<S>(2.0) / ((S::one() - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre::<f64>(16);
        // exact for degree <= 31
        for k in 0..=31usize {
            let got: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(k as i32)).sum();
            let want = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((got - want).abs() < 1e-13, "degree {k}: {got} vs {want}");
        }
    }

    #[test]
    fn weights_sum_to_two() {
        for n in [2usize, 5, 8, 16, 32, 64] {
            let (_, w) = gauss_legendre::<f64>(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-12, "n = {n}");
        }
    }
}
