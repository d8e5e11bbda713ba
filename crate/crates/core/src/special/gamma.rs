//! Complex gamma (Lanczos), beta, and real digamma.

use num_complex::Complex;

use crate::scalar::{fl, Cx, Scalar};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for complex argument (Lanczos approximation, reflection
/// for Re z < 1/2). Relative accuracy ~1e-13 away from the poles.
pub fn gamma<S: Scalar>(z: Cx<S>) -> Cx<S> {
    let half = fl::<S>(0.5);
    if z.re < half {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let pi = S::PI();
        let pi_z = z * pi;
        Complex::new(pi, S::zero()) / (pi_z.sin() * gamma(Complex::new(S::one(), S::zero()) - z))
    } else {
        let z = z - S::one();
        let mut acc = Complex::new(fl::<S>(LANCZOS[0]), S::zero());
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            acc += Complex::new(fl::<S>(c), S::zero()) / (z + fl::<S>(i as f64));
        }
        let t = z + fl::<S>(LANCZOS_G + 0.5);
        let sqrt_2pi = fl::<S>((2.0 * std::f64::consts::PI).sqrt());
        // t is in the right half plane here, so the principal power is smooth
        let ln_t = Complex::new(t.norm().ln(), t.im.atan2(t.re));
        (ln_t * (z + half) - t).exp() * acc * sqrt_2pi
    }
}

/// Euler beta function B(u, v) = Gamma(u) Gamma(v) / Gamma(u + v).
pub fn beta<S: Scalar>(u: Cx<S>, v: Cx<S>) -> Cx<S> {
    gamma(u) * gamma(v) / gamma(u + v)
}

// psi(x) ~ ln x - 1/(2x) - sum B_{2j} / (2j x^{2j})
const DIGAMMA_ASYMP: [f64; 7] = [
    -1.0 / 12.0,
    1.0 / 120.0,
    -1.0 / 252.0,
    1.0 / 240.0,
    -1.0 / 132.0,
    691.0 / 32760.0,
    -1.0 / 12.0,
];

/// Digamma for real positive argument (recurrence into the asymptotic zone).
pub fn digamma<S: Scalar>(x: S) -> S {
    assert!(x > S::zero(), "digamma: need x > 0");
    let mut x = x;
    let mut acc = S::zero();
    let threshold = fl::<S>(12.0);
    while x < threshold {
        acc -= x.recip();
        x += S::one();
    }
    let inv2 = (x * x).recip();
    let mut series = S::zero();
    let mut pw = inv2;
    for &c in &DIGAMMA_ASYMP {
        series += fl::<S>(c) * pw;
        pw *= inv2;
    }
    acc + x.ln() - (fl::<S>(2.0) * x).recip() + series
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn gamma_known_values() {
        for n in 1..=10u32 {
            let mut fact = 1.0f64;
            for k in 1..n {
                fact *= k as f64;
            }
            let g = gamma(Complex64::new(n as f64, 0.0));
            assert!((g.re - fact).abs() / fact < 1e-13 && g.im.abs() < 1e-10 * fact);
        }
        // Gamma(1/2) = sqrt(pi)
        let g = gamma(Complex64::new(0.5, 0.0));
        assert!((g.re - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        // reference value at 4 + 10i
        let g = gamma(Complex64::new(4.0, 10.0));
        let want = Complex64::new(7.715342942399663e-4, -1.0190827990417124e-3);
        assert!((g - want).norm() / want.norm() < 1e-12, "got {g}");
        // reflection side: Gamma(-0.5) = -2 sqrt(pi)
        let g = gamma(Complex64::new(-0.5, 0.0));
        assert!((g.re + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gamma_recurrence_holds() {
        for &(re, im) in &[(0.3, 2.0), (-1.2, 5.0), (2.5, -40.0), (-0.5, 17.3)] {
            let z = Complex64::new(re, im);
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-11, "z = {z}");
        }
    }

    #[test]
    fn beta_elementary() {
        // B(1/2, 1/2) = pi
        let b = beta(Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0));
        assert!((b.re - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn digamma_values() {
        const EULER_GAMMA: f64 = 0.5772156649015329;
        assert!((digamma(1.0f64) + EULER_GAMMA).abs() < 1e-13);
        // psi(1/2) = -gamma - 2 ln 2
        let want = -EULER_GAMMA - 2.0 * (2.0f64).ln();
        assert!((digamma(0.5f64) - want).abs() < 1e-13);
        // recurrence psi(x+1) = psi(x) + 1/x
        for &x in &[0.1f64, 0.37, 0.9, 2.4] {
            assert!((digamma(x + 1.0) - digamma(x) - 1.0 / x).abs() < 1e-12);
        }
    }
}
