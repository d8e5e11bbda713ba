//! The damped oscillatory test-function family.
//!
//! phi(x) = (sinh^2 beta / 2 pi) x^2 exp(i x cosh beta) with
//! beta = (log X)/2 + i/(2T). Its Bessel transform phi_hat, the constant
//! phi_0, the kernel phi_B, and the cosine-Mellin transform Phi(n, s) all
//! have closed forms; each is paired here with a quadrature of its defining
//! integral so a wrong branch or sign is caught by a test, never trusted.
//!
//! All complex powers, logs and arctangents take principal branches. The
//! quantities that appear (c^2 + n^2/4, cosh^2 beta - xi^2, z_pm) keep a
//! fixed-sign imaginary part across the parameter window, so the principal
//! branch is continuous everywhere it is used.

use num_complex::Complex;

use crate::quad::{damped_panels, integrate_adaptive, left_endpoint_power, GlRule};
use crate::scalar::{fl, Cx, Scalar};
use crate::special::{beta as beta_fn, bessel_j, gamma};
use crate::{Error, Result};

/// The (X, T) parameter pack with the derived beta, c = a - ib, and gamma.
#[derive(Debug, Clone, Copy)]
pub struct TestParams<S: Scalar> {
    pub x: S,
    pub t: S,
    pub theta: S,
    pub beta: Cx<S>,
    pub c: Cx<S>,
    pub a: S,
    pub b: S,
    pub gamma: S,
    sinh_beta: Cx<S>,
    cosh_beta: Cx<S>,
}

impl<S: Scalar> TestParams<S> {
    /// Build the pack; X < 2 or T < 1 is rejected (beta -> 0 breaks the
    /// sinh beta divisions and the paper's regime is X, T >> 1 anyway).
    pub fn new(x: S, t: S, theta: S) -> Result<Self> {
        if !(x >= fl(2.0)) || !(t >= S::one()) {
            return Err(Error::DegenerateParams(format!("need X >= 2 and T >= 1, got X={x}, T={t}")));
        }
        if theta < S::zero() || theta > fl(0.25) {
            return Err(Error::DegenerateParams(format!("theta = {theta} outside [0, 1/4]")));
        }
        let half = fl::<S>(0.5);
        let log_sqrt_x = x.ln() * half;
        let inv_2t = (t + t).recip();
        let beta = Complex::new(log_sqrt_x, inv_2t);
        let a = log_sqrt_x.sinh() * inv_2t.sin();
        let b = log_sqrt_x.cosh() * inv_2t.cos();
        let c = Complex::new(a, -b);
        let gamma = (-b).atan2(a) + S::FRAC_PI_2();
        debug_assert!(a > S::zero() && b > S::zero() && gamma > S::zero());
        Ok(Self { x, t, theta, beta, c, a, b, gamma, sinh_beta: beta.sinh(), cosh_beta: beta.cosh() })
    }

    pub fn sinh_beta(&self) -> Cx<S> {
        self.sinh_beta
    }

    pub fn cosh_beta(&self) -> Cx<S> {
        self.cosh_beta
    }

    /// sinh^2(beta) / (2 pi), the normalization in front of phi.
    pub fn phi_norm(&self) -> Cx<S> {
        self.sinh_beta * self.sinh_beta / (fl::<S>(2.0) * S::PI())
    }

    /// z_pm(n) = 2ci +- n = (2b +- n) + 2ai.
    pub fn z_pm(&self, n: S) -> (Cx<S>, Cx<S>) {
        let two_a = self.a + self.a;
        let two_b = self.b + self.b;
        (Complex::new(two_b + n, two_a), Complex::new(two_b - n, two_a))
    }
}

/// phi(x) = (sinh^2 beta / 2 pi) x^2 e^{i x cosh beta}; |phi| decays like
/// x^2 e^{-ax}.
pub fn phi<S: Scalar>(x: S, p: &TestParams<S>) -> Cx<S> {
    let phase = Complex::new(S::zero(), x) * p.cosh_beta;
    p.phi_norm() * (x * x) * phase.exp()
}

// ---------------------------------------------------------------------------
// phi_hat
// ---------------------------------------------------------------------------

/// Closed form of the Bessel transform
/// phi_hat(t) = t cosh(pi t + 2 i beta t)/sinh(pi t)
///            + i sinh(pi t + 2 i beta t)/(2 tanh(beta) sinh(pi t)),
/// computed via scaled exponentials so cosh(pi t) never overflows.
pub fn phi_hat_closed<S: Scalar>(t: S, p: &TestParams<S>) -> Result<Cx<S>> {
    if !(t > S::zero()) {
        return Err(Error::domain(format!("phi_hat_closed: need t > 0, got {t}")));
    }
    let two_i_beta_t = Complex::new(S::zero(), t + t) * p.beta;
    let e = two_i_beta_t.exp(); // X^{it} e^{-t/T}
    let two_pi_t = fl::<S>(2.0) * S::PI() * t;
    let u = ((-two_pi_t).exp()) * (-(two_i_beta_t + two_i_beta_t)).exp();
    let d = S::one() - (-two_pi_t).exp();
    let tanh_beta = p.sinh_beta / p.cosh_beta;
    let one = Complex::new(S::one(), S::zero());
    let i = Complex::new(S::zero(), S::one());
    Ok(e / d * ((one + u) * t + i * (one - u) / (tanh_beta * fl::<S>(2.0))))
}

/// Defining integral (pi i / (2 sinh pi t)) int_0^inf (J_{2it} - J_{-2it}) phi(x) dx/x.
pub fn phi_hat_quadrature<S: Scalar>(t: S, p: &TestParams<S>) -> Result<Cx<S>> {
    if !(t > S::zero()) {
        return Err(Error::domain("phi_hat_quadrature: need t > 0".into()));
    }
    let nu = Complex::new(S::zero(), t + t);
    let f = |x: S| -> Cx<S> {
        let jp = bessel_j(nu, x).expect("in oracle regime");
        let jm = bessel_j(-nu, x).expect("in oracle regime");
        (jp - jm) * phi(x, p) / x
    };
    // integrand ~ x with bounded oscillation in ln x near 0: the sliver
    // below delta contributes O(delta^2)
    let delta = fl::<S>(1e-5);
    let width = S::PI() / (p.b + S::one());
    let walk = damped_panels(f, delta, width, fl(1e-11), 40_000)?;
    let pref = Complex::new(S::zero(), S::PI() / (fl::<S>(2.0) * (S::PI() * t).sinh()));
    Ok(pref * walk.value)
}

// ---------------------------------------------------------------------------
// phi_0 and phi_B
// ---------------------------------------------------------------------------

/// phi_0 = (-i / 4 pi^2) (2 / sinh beta + 3 / sinh^3 beta).
pub fn phi0_closed<S: Scalar>(p: &TestParams<S>) -> Cx<S> {
    let sb = p.sinh_beta;
    let inv = sb.inv();
    let inv3 = inv * inv * inv;
    let pref = Complex::new(S::zero(), -(fl::<S>(4.0) * S::PI() * S::PI()).recip());
    pref * (inv * fl::<S>(2.0) + inv3 * fl::<S>(3.0))
}

/// Defining integral (1/2 pi) int_0^inf J_0(y) phi(y) dy.
pub fn phi0_quadrature<S: Scalar>(p: &TestParams<S>) -> Result<Cx<S>> {
    let zero_nu = Complex::new(S::zero(), S::zero());
    let f = |y: S| bessel_j(zero_nu, y).expect("in oracle regime") * phi(y, p);
    let width = S::PI() / (p.b + S::one());
    let walk = damped_panels(f, S::zero(), width, fl(1e-11), 40_000)?;
    Ok(walk.value / (fl::<S>(2.0) * S::PI()))
}

/// phi_B(x) as the single xi-integral over [0, 1]:
/// (-i sinh^2 beta / 2 pi) int xi x J_0(xi x)
///   [ 2 (cosh^2 b - xi^2)^{-3/2} + 3 xi^2 (cosh^2 b - xi^2)^{-5/2} ] dxi.
pub fn phi_b<S: Scalar>(x: S, p: &TestParams<S>) -> Result<Cx<S>> {
    if !(x > S::zero()) {
        return Err(Error::domain("phi_b: need x > 0".into()));
    }
    let ch2 = p.cosh_beta * p.cosh_beta; // Im = 2ab > 0, never real-negative
    let zero_nu = Complex::new(S::zero(), S::zero());
    let three_half = Complex::new(fl::<S>(-1.5), S::zero());
    let five_half = Complex::new(fl::<S>(-2.5), S::zero());
    let f = |xi: S| -> Cx<S> {
        let w = ch2 - Complex::new(xi * xi, S::zero());
        let ln_w = Complex::new(w.norm().ln(), w.im.atan2(w.re));
        let k32 = (three_half * ln_w).exp();
        let k52 = (five_half * ln_w).exp();
        let j0 = bessel_j(zero_nu, xi * x).expect("in oracle regime");
        j0 * (xi * x) * (k32 * fl::<S>(2.0) + k52 * (fl::<S>(3.0) * xi * xi))
    };
    let tol = fl::<S>(1e-9);
    let integral = integrate_adaptive(&f, S::zero(), S::one(), tol)?;
    let pref = Complex::new(S::zero(), -S::one()) * p.sinh_beta * p.sinh_beta
        / (fl::<S>(2.0) * S::PI());
    Ok(pref * integral)
}

/// Nested-quadrature oracle for phi_B from its double-integral definition
/// int_0^1 int_0^inf xi x J_0(xi x) J_0(xi y) phi(y) dy dxi. Slow; used at
/// single points in tests.
pub fn phi_b_double_oracle<S: Scalar>(x: S, p: &TestParams<S>) -> Result<Cx<S>> {
    let zero_nu = Complex::new(S::zero(), S::zero());
    let inner = |xi: S| -> Cx<S> {
        if xi.is_zero() {
            return Complex::new(S::zero(), S::zero());
        }
        let f = |y: S| bessel_j(zero_nu, xi * y).expect("oracle regime") * phi(y, p);
        let width = S::PI() / (p.b + xi + S::one());
        let walk = damped_panels(f, S::zero(), width, fl(1e-10), 40_000).expect("damped inner");
        walk.value * bessel_j(zero_nu, xi * x).expect("oracle regime") * (xi * x)
    };
    // outer integrand is smooth on [0,1]
    let rule = GlRule::new(48);
    let mut acc = Complex::new(S::zero(), S::zero());
    let panels = 8usize;
    for k in 0..panels {
        let a = fl::<S>(k as f64 / panels as f64);
        let b = fl::<S>((k + 1) as f64 / panels as f64);
        acc = acc + rule.integrate(a, b, inner);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Phi(n, s)
// ---------------------------------------------------------------------------

/// Closed form
/// Phi(n,s) = (sinh^2 b / 2 pi) (4 pi)^{s-1} Gamma(3-s)
///            (c^2 + n^2/4)^{-(3-s)/2} cos((3-s) arctan(n / 2c)),
/// arctan(n/2c) = (i/2)(Log z_+ - Log z_-), z_pm = 2ci +- n.
pub fn capital_phi<S: Scalar>(n: S, s: Cx<S>, p: &TestParams<S>) -> Result<Cx<S>> {
    if !(s.re < fl(3.0)) {
        return Err(Error::domain(format!("capital_phi: need Re s < 3, got {}", s.re)));
    }
    if !(n >= S::zero()) {
        return Err(Error::domain("capital_phi: need n >= 0".into()));
    }
    let one = Complex::new(S::one(), S::zero());
    let three = Complex::new(fl::<S>(3.0), S::zero());
    let half = fl::<S>(0.5);
    let (zp, zm) = p.z_pm(n);
    let log_zp = Complex::new(zp.norm().ln(), zp.im.atan2(zp.re));
    let log_zm = Complex::new(zm.norm().ln(), zm.im.atan2(zm.re));
    let arctan = (log_zp - log_zm) * Complex::new(S::zero(), half);
    let w = p.c * p.c + Complex::new(n * n * fl::<S>(0.25), S::zero());
    let log_w = Complex::new(w.norm().ln(), w.im.atan2(w.re));
    let four_pi = fl::<S>(4.0) * S::PI();
    let pref = ((s - one) * four_pi.ln()).exp();
    let power = (-(three - s) * half * log_w).exp();
    Ok(p.phi_norm() * pref * gamma(three - s) * power * ((three - s) * arctan).cos())
}

/// Phi(n, 1) = (sinh^2 b / 2 pi c^2) (1 - n^2/4c^2) / (1 + n^2/4c^2)^2.
/// Defined for real n >= 0 (also used at real x in the Abel-summation step).
pub fn capital_phi_at_one<S: Scalar>(n: S, p: &TestParams<S>) -> Cx<S> {
    let one = Complex::new(S::one(), S::zero());
    let u2 = Complex::new(n * n * fl::<S>(0.25), S::zero()) / (p.c * p.c);
    let den = one + u2;
    p.phi_norm() / (p.c * p.c) * (one - u2) / (den * den)
}

/// d/dx Phi(x, 1) in closed form (u = x/2c):
/// A/(2c) * (-2u)(3 - u^2) / (1 + u^2)^3 with A = sinh^2 b / (2 pi c^2).
pub fn capital_phi_prime_at_one<S: Scalar>(x: S, p: &TestParams<S>) -> Cx<S> {
    let one = Complex::new(S::one(), S::zero());
    let u = Complex::new(x * fl::<S>(0.5), S::zero()) / p.c;
    let u2 = u * u;
    let den = one + u2;
    let a_norm = p.phi_norm() / (p.c * p.c);
    a_norm / (p.c * fl::<S>(2.0)) * (-(u + u)) * (Complex::new(fl::<S>(3.0), S::zero()) - u2)
        / (den * den * den)
}

/// Quadrature oracle for Phi(n, s):
/// (4 pi)^{s-1} int_0^inf phi(x) cos(n x / 2) x^{-s} dx.
pub fn capital_phi_quadrature<S: Scalar>(n: S, s: Cx<S>, p: &TestParams<S>) -> Result<Cx<S>> {
    psi_transform(|x| phi(x, p), n, s, p.b)
}

/// The generic transform Psi(n, s) = (4 pi)^{s-1} int_0^inf psi(x) cos(nx/2) x^{-s} dx
/// for a caller-supplied psi with enough decay. `freq` hints the intrinsic
/// oscillation frequency of psi (b for the phi family); panels resolve one
/// oscillation of cos(nx/2) times that.
pub fn psi_transform<S: Scalar, F: Fn(S) -> Cx<S>>(
    psi: F,
    n: S,
    s: Cx<S>,
    freq: S,
) -> Result<Cx<S>> {
    if !(s.re < fl(2.6)) {
        return Err(Error::domain(format!(
            "psi_transform quadrature supports Re s < 2.6, got {}",
            s.re
        )));
    }
    let f = |x: S| -> Cx<S> {
        let x_pow = ((-s) * x.ln()).exp();
        psi(x) * (n * x * fl::<S>(0.5)).cos() * x_pow
    };
    let width = S::PI() / (n * fl::<S>(0.5) + freq + S::one());
    // endpoint: integrand ~ x^{2-Re s} for the phi family (psi ~ x^2 contract)
    let head = left_endpoint_power(&f, width, 4);
    let walk = damped_panels(&f, width, width, fl(1e-11), 200_000)?;
    let four_pi = fl::<S>(4.0) * S::PI();
    let one = Complex::new(S::one(), S::zero());
    Ok(((s - one) * four_pi.ln()).exp() * (head + walk.value))
}

// ---------------------------------------------------------------------------
// bump function
// ---------------------------------------------------------------------------

/// int_{-1}^{1} exp(-1/(1-u^2)) du, fixed once by quadrature (30 digits).
pub const BUMP_MASS_I0: f64 = 0.443_993_816_168_079_437_823_048_921_17;

/// Smooth bump supported on [N, 2N] with unit-mass normalization
/// int h = N: h(x) = C exp(-1/(1-u^2)), u = (x - 3N/2)/(N/2), C = 2/I0.
#[derive(Debug, Clone, Copy)]
pub struct BumpSpec<S: Scalar> {
    pub n: S,
    pub c: S,
}

impl<S: Scalar> BumpSpec<S> {
    pub fn new(n: S) -> Result<Self> {
        if !(n > S::one()) {
            return Err(Error::domain(format!("bump: need N > 1, got {n}")));
        }
        Ok(Self { n, c: fl::<S>(2.0 / BUMP_MASS_I0) })
    }
}

/// h(x); identically zero outside (N, 2N).
pub fn h_bump<S: Scalar>(x: S, spec: &BumpSpec<S>) -> S {
    let half_n = spec.n * fl::<S>(0.5);
    let u = (x - spec.n * fl::<S>(1.5)) / half_n;
    let one_m = S::one() - u * u;
    if one_m <= S::zero() {
        return S::zero();
    }
    spec.c * (-one_m.recip()).exp()
}

/// Mellin transform h~(s) = int_N^{2N} h(x) x^{s-1} dx by panelled
/// Gauss-Legendre (h vanishes to all orders at the endpoints).
pub fn h_mellin<S: Scalar>(s: Cx<S>, spec: &BumpSpec<S>) -> Cx<S> {
    let one = Complex::new(S::one(), S::zero());
    let f = |x: S| Complex::new(h_bump(x, spec), S::zero()) * ((s - one) * x.ln()).exp();
    let rule = GlRule::new(24);
    // phase spans |Im s| ln 2 over the support; keep panels below ~pi phase
    let im = s.im.abs().to_f64().unwrap_or(0.0);
    let panels = (8 + (im * std::f64::consts::LN_2 / 3.0) as usize).max(8);
    let mut acc = Complex::new(S::zero(), S::zero());
    for k in 0..panels {
        let a = spec.n * (S::one() + fl::<S>(k as f64 / panels as f64));
        let b = spec.n * (S::one() + fl::<S>((k + 1) as f64 / panels as f64));
        acc = acc + rule.integrate(a, b, f);
    }
    acc
}

// ---------------------------------------------------------------------------
// envelopes and the beta integral
// ---------------------------------------------------------------------------

/// f_j(x), j = +-1: the Phi(n, 1/2 + it) envelope factor.
pub fn f_envelope<S: Scalar>(j: i8, x: S, p: &TestParams<S>) -> S {
    assert!(j == 1 || j == -1);
    let g = p.gamma;
    let half_g = g * fl::<S>(0.5);
    let one_m = (S::one() - x) * (S::one() - x);
    let four_x = fl::<S>(4.0) * x;
    let num = one_m + four_x * half_g.cos() * half_g.cos();
    let den = one_m + four_x * half_g.sin() * half_g.sin();
    let ratio = (num / den).powf(fl::<S>(5.0 * j as f64 / 8.0));
    let one_m_x2 = (S::one() - x * x) * (S::one() - x * x);
    let base = one_m_x2 + fl::<S>(4.0) * x * x * g.sin() * g.sin();
    ratio * x.powf(p.theta + p.theta) / base.powf(fl(0.625))
}

/// g(y): the Phi(n, 1) envelope factor.
pub fn g_envelope<S: Scalar>(y: S, p: &TestParams<S>) -> S {
    let g = p.gamma;
    let one_m_y2 = (S::one() - y * y) * (S::one() - y * y);
    let fy2 = fl::<S>(4.0) * y * y;
    let num = (one_m_y2 + fy2 * g.cos() * g.cos()).sqrt();
    let den = one_m_y2 + fy2 * g.sin() * g.sin();
    num / den * y.powf(p.theta + p.theta)
}

/// int_0^inf x^{s-1} (1 + alpha x^h)^{-nu} dx = h^{-1} alpha^{-s/h} B(s/h, nu - s/h),
/// |arg alpha| < pi, h > 0, 0 < Re s < h Re nu.
pub fn beta_integral<S: Scalar>(s: Cx<S>, h: S, nu: Cx<S>, alpha: Cx<S>) -> Result<Cx<S>> {
    if !(h > S::zero()) {
        return Err(Error::domain("beta_integral: need h > 0".into()));
    }
    if alpha.im.is_zero() && alpha.re <= S::zero() {
        return Err(Error::domain("beta_integral: alpha on the branch cut".into()));
    }
    if !(s.re > S::zero()) || !(s.re < h * nu.re) {
        return Err(Error::domain(format!(
            "beta_integral: need 0 < Re s < h Re nu, got Re s = {}, h Re nu = {}",
            s.re,
            h * nu.re
        )));
    }
    let log_alpha = Complex::new(alpha.norm().ln(), alpha.im.atan2(alpha.re));
    let s_over_h = s / h;
    Ok((-s_over_h * log_alpha).exp() * beta_fn(s_over_h, nu - s_over_h) / h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    type P = TestParams<f64>;

    fn params(x: f64, t: f64) -> P {
        P::new(x, t, 1.0 / 6.0).unwrap()
    }

    #[test]
    fn params_examples() {
        assert!(P::new(1.0, 10.0, 1.0 / 6.0).is_err());
        assert!(P::new(10.0, 0.5, 1.0 / 6.0).is_err());
        // X = e^2, T = 10: beta = 1 + i/20, a = sinh(1) sin(1/20), b = cosh(1) cos(1/20)
        let p = P::new((2.0f64).exp(), 10.0, 1.0 / 6.0).unwrap();
        assert!((p.beta - C64::new(1.0, 0.05)).norm() < 1e-15);
        assert!((p.a - 1.0f64.sinh() * 0.05f64.sin()).abs() < 1e-15);
        assert!((p.b - 1.0f64.cosh() * 0.05f64.cos()).abs() < 1e-15);
        // c = -i cosh(beta) and arg c = -pi/2 + gamma
        let c_check = C64::new(0.0, -1.0) * p.beta.cosh();
        assert!((p.c - c_check).norm() < 1e-14);
        assert!(p.b > p.a);
    }

    #[test]
    fn gamma_window_on_grid() {
        for &x in &[4.0, 10.0, 100.0, 1e4] {
            for &t in &[4.0, 10.0, 100.0] {
                let p = params(x, t);
                assert!(
                    p.gamma > 1.0 / (4.0 * t) && p.gamma < 2.0 / t,
                    "X={x} T={t}: gamma={} not in (1/4T, 2/T)",
                    p.gamma
                );
            }
        }
    }

    #[test]
    fn params_magnitude_window() {
        for &x in &[16.0, 100.0, 1e3, 1e4] {
            for &t in &[2.0, 5.0, 50.0] {
                let p = params(x, t);
                let s2 = (p.sinh_beta() * p.sinh_beta()).norm() / x;
                let c2 = p.c.norm_sqr() / x;
                assert!((0.125..=1.0).contains(&s2), "X={x} T={t}: |sinh^2|/X = {s2}");
                assert!((0.125..=1.0).contains(&c2), "X={x} T={t}: |c|^2/X = {c2}");
            }
        }
    }

    #[test]
    fn phi_basics() {
        let p = params(100.0, 5.0);
        assert_eq!(phi(0.0, &p), C64::new(0.0, 0.0));
        for &x in &[1.0, 10.0, 100.0] {
            let want = p.phi_norm().norm() * x * x * (-p.a * x).exp();
            assert!((phi(x, &p).norm() - want).abs() < 1e-12 * want.max(1e-300));
        }
        // order-2 vanishing at 0
        let r = phi(1e-4, &p).norm() / phi(2e-4, &p).norm();
        assert!((r - 0.25).abs() < 1e-3);
    }

    #[test]
    fn phi_hat_residual_enveloped() {
        // |phi_hat(t) - (t + i cosh b / 2 sinh b) X^{it} e^{-t/T}| <= 10 e^{-pi t}
        for &x in &[4.0, 10.0, 100.0] {
            for &tt in &[2.0, 5.0, 20.0] {
                let p = params(x, tt);
                for &t in &[1.0, 2.0, 5.0, 10.0, 30.0] {
                    let v = phi_hat_closed(t, &p).unwrap();
                    let lead = C64::new(0.0, t * x.ln() - t / tt).exp();
                    let corr = C64::new(0.0, 1.0) * p.cosh_beta() / (2.0 * p.sinh_beta());
                    let resid = (v - lead * (corr + t)).norm();
                    assert!(
                        resid <= 10.0 * (-std::f64::consts::PI * t).exp(),
                        "X={x} T={tt} t={t}: resid {resid:.3e}"
                    );
                }
            }
        }
    }

    #[test]
    fn phi_hat_dominant_limit() {
        let p = params(10.0, 5.0);
        let t = 25.0;
        let lead = t * C64::new(0.0, t * 10.0f64.ln() - t / 5.0).exp();
        let ratio = phi_hat_closed(t, &p).unwrap() / lead;
        assert!((ratio - C64::new(1.0, 0.0)).norm() < 0.01);
        assert!(phi_hat_closed(0.0, &p).is_err());
    }

    #[test]
    fn phi_hat_closed_matches_quadrature() {
        let p = params(10.0, 5.0);
        let closed = phi_hat_closed(2.0, &p).unwrap();
        let quad = phi_hat_quadrature(2.0, &p).unwrap();
        assert!((closed - quad).norm() < 1e-5, "closed {closed} vs quad {quad}");
    }

    #[test]
    fn bessel_exponential_integral_identity() {
        // int_0^inf J_{2it}(x) e^{i x cosh b} dx = -exp(-(pi + 2 i b) t) / (i sinh b)
        let p = params(10.0, 5.0);
        let t = 1.0f64;
        let nu = C64::new(0.0, 2.0 * t);
        let f = |x: f64| {
            bessel_j(nu, x).unwrap() * (C64::new(0.0, x) * p.cosh_beta()).exp()
        };
        let delta = 1e-6;
        let walk = damped_panels(f, delta, std::f64::consts::PI / (p.b + 1.0), 1e-11, 40_000)
            .unwrap();
        let want = -(-(C64::new(std::f64::consts::PI, 0.0) + 2.0 * C64::new(0.0, 1.0) * p.beta)
            * t)
            .exp()
            / (C64::new(0.0, 1.0) * p.sinh_beta());
        assert!((walk.value - want).norm() < 1e-5, "quad {} vs closed {want}", walk.value);
    }

    #[test]
    fn phi0_closed_matches_quadrature() {
        let p = params(10.0, 5.0);
        let closed = phi0_closed(&p);
        let quad = phi0_quadrature(&p).unwrap();
        assert!((closed - quad).norm() < 1e-6, "closed {closed} vs quad {quad}");
    }

    #[test]
    fn phi0_magnitude_envelope() {
        // |phi_0| <= C X^{-1/2}; C calibrated at 0.12 on the grid
        for &x in &[4.0, 100.0, 1e4] {
            for &t in &[2.0, 10.0, 50.0] {
                let p = params(x, t);
                let v = phi0_closed(&p).norm();
                assert!(v <= 0.12 / x.sqrt(), "X={x} T={t}: {v}");
            }
        }
        // dominant-term ratio -> 1 for large X
        let p = params(1e8, 10.0);
        let lead = C64::new(0.0, -1.0) / (2.0 * std::f64::consts::PI.powi(2) * p.sinh_beta());
        assert!((phi0_closed(&p) / lead - C64::new(1.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn phi_b_envelope_and_small_x() {
        for &x in &[10.0, 100.0] {
            for &t in &[5.0, 20.0] {
                let p = params(x, t);
                for &xx in &[0.1, 1.0, 10.0, 100.0] {
                    let v = phi_b(xx, &p).unwrap().norm();
                    let env = 2.2 / x.sqrt() * xx.min(xx.sqrt());
                    assert!(v <= env, "X={x} T={t} x={xx}: {v} > {env}");
                }
            }
        }
        // linear vanishing at 0
        let p = params(10.0, 5.0);
        let r = phi_b(1e-3, &p).unwrap().norm() / phi_b(2e-3, &p).unwrap().norm();
        assert!((r - 0.5).abs() < 1e-2);
    }

    #[test]
    fn phi_b_double_integral_oracle() {
        let p = params(10.0, 5.0);
        let fast = phi_b(1.0, &p).unwrap();
        let slow = phi_b_double_oracle(1.0, &p).unwrap();
        assert!((fast - slow).norm() < 1e-5, "single {fast} vs double {slow}");
    }

    #[test]
    fn capital_phi_reduces_at_one() {
        let p = params(10.0, 4.0);
        for &n in &[0.0, 1.0, 2.0, 5.0, 17.0, 300.0] {
            let a = capital_phi(n, C64::new(1.0, 0.0), &p).unwrap();
            let b = capital_phi_at_one(n, &p);
            assert!((a - b).norm() <= 1e-12 * b.norm().max(1e-12), "n={n}: {a} vs {b}");
        }
    }

    #[test]
    fn capital_phi_matches_quadrature() {
        let p = params(10.0, 4.0);
        for &n in &[0.0, 1.0, 5.0] {
            for &s in &[C64::new(1.0, 0.0), C64::new(1.75, 0.0), C64::new(0.5, 3.0)] {
                let closed = capital_phi(n, s, &p).unwrap();
                let quad = capital_phi_quadrature(n, s, &p).unwrap();
                assert!(
                    (closed - quad).norm() < 1e-5,
                    "n={n} s={s}: closed {closed} vs quad {quad}"
                );
            }
        }
        assert!(capital_phi(1.0, C64::new(3.0, 0.0), &params(10.0, 4.0)).is_err());
    }

    #[test]
    fn capital_phi_decays_beyond_bulk() {
        let p = params(10.0, 4.0);
        let s = C64::new(0.5, 3.0);
        let start = (4.0 * p.c.norm()).ceil();
        let mut prev = capital_phi(start, s, &p).unwrap().norm();
        for k in 1..40 {
            let v = capital_phi(start + 2.0 * k as f64, s, &p).unwrap().norm();
            assert!(v < prev, "not monotone at n = {}", start + 2.0 * k as f64);
            prev = v;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn modulus_identities() {
        // closed modulus formulas against direct complex moduli, 1e-12
        for &(x, t) in &[(10.0, 4.0), (100.0, 8.0), (1e4, 50.0)] {
            let p = params(x, t);
            let cc = p.c.norm();
            for &n in &[0.0, 0.5, 3.0, 2.0 * cc, 10.0 * cc] {
                let (zp, zm) = p.z_pm(n);
                let u = n / (2.0 * cc);
                let zp_closed = (2.0 * cc * p.gamma.cos() + n).powi(2)
                    + (2.0 * cc * p.gamma.sin()).powi(2);
                let zp_closed2 = (2.0 * cc).powi(2)
                    * ((1.0 - u).powi(2) + 4.0 * u * (p.gamma / 2.0).cos().powi(2));
                assert!((zp.norm_sqr() - zp_closed).abs() <= 1e-12 * zp_closed);
                assert!((zp.norm_sqr() - zp_closed2).abs() <= 1e-12 * zp_closed2);
                let zm_closed = (2.0 * cc).powi(2)
                    * ((1.0 - u).powi(2) + 4.0 * u * (p.gamma / 2.0).sin().powi(2));
                assert!((zm.norm_sqr() - zm_closed).abs() <= 1e-12 * zm_closed.max(1e-12));
                let w = p.c * p.c + C64::new(n * n / 4.0, 0.0);
                let w_closed = cc.powi(4)
                    * ((1.0 - u * u).powi(2) + 4.0 * u * u * p.gamma.sin().powi(2));
                assert!((w.norm_sqr() - w_closed).abs() <= 1e-12 * w_closed.max(1e-12));
                // Phi(x,1) building blocks
                let v = n * n / (4.0 * cc * cc);
                let one_minus = C64::new(1.0, 0.0) - C64::new(n * n / 4.0, 0.0) / (p.c * p.c);
                let om_closed = (1.0 - v).powi(2) + 4.0 * v * p.gamma.cos().powi(2);
                assert!((one_minus.norm_sqr() - om_closed).abs() <= 1e-12 * om_closed);
                let one_plus = C64::new(1.0, 0.0) + C64::new(n * n / 4.0, 0.0) / (p.c * p.c);
                let op_closed = (1.0 - v).powi(2) + 4.0 * v * p.gamma.sin().powi(2);
                assert!(
                    (one_plus.norm_sqr() - op_closed).abs() <= 1e-12 * op_closed.max(1e-12)
                );
            }
        }
    }

    #[test]
    fn psi_transform_properties() {
        let p = params(10.0, 4.0);
        // psi = phi reproduces capital_phi
        let s = C64::new(1.75, 0.0);
        let a = psi_transform(|x| phi(x, &p), 3.0, s, p.b).unwrap();
        let b = capital_phi(3.0, s, &p).unwrap();
        assert!((a - b).norm() < 1e-6, "{a} vs {b}");
        // linearity on a random pair
        let q = params(30.0, 5.0);
        let lin = psi_transform(|x| phi(x, &p) * 2.0 + phi(x, &q), 1.0, s, p.b.max(q.b)).unwrap();
        let parts = psi_transform(|x| phi(x, &p), 1.0, s, p.b).unwrap() * 2.0
            + psi_transform(|x| phi(x, &q), 1.0, s, q.b).unwrap();
        assert!((lin - parts).norm() < 1e-6);
        // n = 0 is the plain Mellin-type integral
        let m0 = psi_transform(|x| phi(x, &p), 0.0, s, p.b).unwrap();
        let m0_direct = capital_phi(0.0, s, &p).unwrap();
        assert!((m0 - m0_direct).norm() < 1e-6);
    }

    #[test]
    fn bump_normalization_and_mellin() {
        let spec = BumpSpec::<f64>::new(10.0).unwrap();
        // mass: h~(1) = N within 1e-8 N
        let mass = h_mellin(C64::new(1.0, 0.0), &spec);
        assert!((mass.re - 10.0).abs() < 1e-8 * 10.0, "mass {mass}");
        assert!(mass.im.abs() < 1e-12);
        // I0 against an independent adaptive quadrature
        let i0 = integrate_adaptive(
            &|u: f64| {
                let w = 1.0 - u * u;
                C64::new(if w > 0.0 { (-1.0 / w).exp() } else { 0.0 }, 0.0)
            },
            -1.0,
            1.0,
            1e-12,
        )
        .unwrap();
        assert!((i0.re - BUMP_MASS_I0).abs() < 1e-10, "I0 = {}", i0.re);
        // superpolynomial Mellin decay on the half line
        let h0 = h_mellin(C64::new(0.5, 0.0), &spec).norm();
        for &t in &[10.0, 20.0, 50.0] {
            let v = h_mellin(C64::new(0.5, t), &spec).norm();
            assert!(v <= 40.0 * h0 / (1.0 + t).powi(6), "t={t}: {v:.3e}");
        }
    }

    #[test]
    fn envelope_ordering_and_bounds() {
        let p = params(100.0, 10.0);
        for k in 1..=100 {
            let x = 0.05 * k as f64;
            assert!(f_envelope(-1, x, &p) < f_envelope(1, x, &p), "x = {x}");
            // f_1 <= C min(T^{5/2}, x^{2 theta} / |1-x|^{5/2}) with C = 3
            let f1 = f_envelope(1, x, &p);
            let cap = (p.t.powf(2.5)).min(x.powf(2.0 * p.theta) / (1.0 - x).abs().powf(2.5));
            assert!(f1 <= 3.0 * cap, "x = {x}: f1 = {f1}, cap = {cap}");
            // g <= C min(T^2, y^{2 theta} / |1-y|^2) with C = 3
            let g = g_envelope(x, &p);
            let gcap = (p.t * p.t).min(x.powf(2.0 * p.theta) / (1.0 - x).powi(2).abs());
            assert!(g <= 3.0 * gcap, "x = {x}: g = {g}, cap = {gcap}");
        }
    }

    #[test]
    fn beta_integral_cases() {
        // s=1, h=2, nu=1, alpha=1: (1/2) B(1/2, 1/2) = pi/2 = int dx/(1+x^2)
        let v = beta_integral(
            C64::new(1.0, 0.0),
            2.0,
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
        )
        .unwrap();
        assert!((v.re - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        // domain rejections
        assert!(beta_integral(C64::new(3.0, 0.0), 2.0, C64::new(1.0, 0.0), C64::new(1.0, 0.0))
            .is_err());
        assert!(beta_integral(C64::new(1.0, 0.0), 2.0, C64::new(1.0, 0.0), C64::new(-1.0, 0.0))
            .is_err());
    }
}
