//! Quadrature engines for the damped oscillatory integrals.
//!
//! The defining integrals in this crate share one shape: an analytic
//! integrand with exponential damping e^{-ax} and a known oscillation scale.
//! They are integrated on fixed-width panels (one oscillation per panel,
//! 16-node Gauss-Legendre each) with early exit once several consecutive
//! panels stop contributing. Endpoint algebraic behavior x^alpha is handled
//! by a power substitution on the first panel.

use num_complex::Complex;

use crate::scalar::{fl, CompensatedComplex, Cx, Scalar};
use crate::special::gauss_legendre;
use crate::{Error, Result};

/// Reusable Gauss-Legendre rule.
pub struct GlRule<S: Scalar> {
    nodes: Vec<S>,
    weights: Vec<S>,
}

impl<S: Scalar> GlRule<S> {
    pub fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        Self { nodes, weights }
    }

    /// Integrate a complex-valued function over [a, b].
    pub fn integrate<F: FnMut(S) -> Cx<S>>(&self, a: S, b: S, mut f: F) -> Cx<S> {
        let half = (b - a) * fl::<S>(0.5);
        let mid = (a + b) * fl::<S>(0.5);
        let mut acc = CompensatedComplex::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(mid + half * x) * w);
        }
        acc.value() * half
    }
}

/// One-shot n-node Gauss-Legendre integral of f over [a, b].
pub fn integrate_gl<S: Scalar, F: FnMut(S) -> Cx<S>>(f: F, a: S, b: S, n: usize) -> Cx<S> {
    GlRule::new(n).integrate(a, b, f)
}

/// Result of a panel walk.
#[derive(Debug, Clone, Copy)]
pub struct PanelValue<S: Scalar> {
    pub value: Cx<S>,
    /// magnitude of the last accepted panel, a crude truncation indicator
    pub last_panel: S,
    pub panels: usize,
}

/// Integrate f over [start, infinity) on fixed-width panels until
/// `consecutive` panels in a row contribute less than rel_tol of the
/// accumulated magnitude (plus a tiny absolute floor).
pub fn damped_panels<S: Scalar, F: Fn(S) -> Cx<S>>(
    f: F,
    start: S,
    width: S,
    rel_tol: S,
    max_panels: usize,
) -> Result<PanelValue<S>> {
    let rule = GlRule::new(16);
    let mut acc = CompensatedComplex::new();
    let mut quiet = 0usize;
    let mut a = start;
    let mut last = S::zero();
    let floor = fl::<S>(1e-300);
    for k in 0..max_panels {
        let b = a + width;
        let contrib = rule.integrate(a, b, &f);
        acc.add(contrib);
        last = contrib.norm();
        let scale = acc.value().norm().max(floor);
        if last <= rel_tol * scale {
            quiet += 1;
            if quiet >= 3 {
                return Ok(PanelValue { value: acc.value(), last_panel: last, panels: k + 1 });
            }
        } else {
            quiet = 0;
        }
        a = b;
    }
    Err(Error::NoConvergence(format!(
        "panel walk from {start} did not settle in {max_panels} panels (last = {last:.3e})"
    )))
}

/// Integrate f over [0, w] where f ~ x^alpha (alpha > -1) at the origin:
/// substitute x = u^m so the integrand becomes u^{m(alpha+1)-1}-smooth.
pub fn left_endpoint_power<S: Scalar, F: Fn(S) -> Cx<S>>(f: F, w: S, m: u32) -> Cx<S> {
    let rule = GlRule::new(24);
    let mf = fl::<S>(m as f64);
    let u_max = w.powf(mf.recip());
    // a few panels in u toward 0 keep the high-order contact accurate
    let mut acc = CompensatedComplex::new();
    let mut hi = u_max;
    for _ in 0..6 {
        let lo = hi * fl::<S>(0.25);
        acc.add(rule.integrate(lo, hi, |u| {
            let x = u.powi(m as i32);
            f(x) * (mf * u.powi(m as i32 - 1))
        }));
        hi = lo;
    }
    // innermost sliver: integrand ~ u^{m(alpha+1)-1} with m chosen so this is
    // >= 2 in practice; one panel suffices
    acc.add(rule.integrate(S::zero(), hi, |u| {
        let x = u.powi(m as i32);
        f(x) * (mf * u.powi(m as i32 - 1))
    }));
    acc.value()
}

/// (1/2 pi i) times the contour integral of f over the circle |s - center| = r,
/// by the M-node trapezoid rule (spectrally accurate for analytic f).
pub fn contour_circle<S: Scalar, F: Fn(Cx<S>) -> Cx<S>>(f: F, center: Cx<S>, r: S, m: usize) -> Cx<S> {
    let mut acc = CompensatedComplex::new();
    let step = fl::<S>(2.0) * S::PI() / fl::<S>(m as f64);
    for k in 0..m {
        let theta = step * fl::<S>(k as f64);
        let dir = Complex::new(theta.cos(), theta.sin());
        acc.add(f(center + dir * r) * dir);
    }
    acc.value() * r / fl::<S>(m as f64)
}

/// Integrate f over [a, b] with simple adaptive bisection (GL-16 vs GL-32
/// disagreement drives the splitting).
pub fn integrate_adaptive<S: Scalar, F: Fn(S) -> Cx<S>>(
    f: &F,
    a: S,
    b: S,
    tol: S,
) -> Result<Cx<S>> {
    fn go<S: Scalar, F: Fn(S) -> Cx<S>>(
        f: &F,
        a: S,
        b: S,
        tol: S,
        coarse: &GlRule<S>,
        fine: &GlRule<S>,
        depth: usize,
    ) -> Result<Cx<S>> {
        let v1 = coarse.integrate(a, b, f);
        let v2 = fine.integrate(a, b, f);
        if (v1 - v2).norm() <= tol {
            return Ok(v2);
        }
        if depth == 0 {
            return Err(Error::NoConvergence(format!(
                "adaptive bisection exhausted on [{a}, {b}], residual {:.3e}",
                (v1 - v2).norm()
            )));
        }
        let mid = (a + b) * fl::<S>(0.5);
        let half_tol = tol * fl::<S>(0.5);
        Ok(go(f, a, mid, half_tol, coarse, fine, depth - 1)?
            + go(f, mid, b, half_tol, coarse, fine, depth - 1)?)
    }
    let coarse = GlRule::new(16);
    let fine = GlRule::new(32);
    go(f, a, b, tol, &coarse, &fine, 24)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn damped_oscillatory_reference() {
        // int_0^inf e^{-x} cos(5x) dx = 1/26
        let v = damped_panels(
            |x: f64| re((-x).exp() * (5.0 * x).cos()),
            0.0,
            std::f64::consts::PI / 5.0,
            1e-12,
            4000,
        )
        .unwrap();
        assert!((v.value.re - 1.0 / 26.0).abs() < 1e-12, "got {}", v.value);
    }

    #[test]
    fn endpoint_power_substitution() {
        // int_0^1 x^{-1/2} dx = 2
        let v = left_endpoint_power(|x: f64| re(x.powf(-0.5)), 1.0, 4);
        assert!((v.re - 2.0).abs() < 1e-9, "got {v}");
        // int_0^1 x^{0.25} dx = 0.8
        let v = left_endpoint_power(|x: f64| re(x.powf(0.25)), 1.0, 4);
        assert!((v.re - 0.8).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn contour_picks_residue() {
        // f = 1/(s-1)^1 has residue 1; add an analytic part that integrates to 0
        let f = |s: Complex64| 1.0 / (s - 1.0) + s * s;
        let v = contour_circle(f, Complex64::new(1.0, 0.0), 0.1, 64);
        assert!((v - re(1.0)).norm() < 1e-12, "got {v}");
        // double pole: residue of 1/(s-1)^2 is 0, of (2s)/(s-1)^2 is 2
        let g = |s: Complex64| 2.0 * s / ((s - 1.0) * (s - 1.0));
        let v = contour_circle(g, Complex64::new(1.0, 0.0), 0.1, 64);
        assert!((v - re(2.0)).norm() < 1e-11, "got {v}");
    }

    #[test]
    fn adaptive_matches_closed_form() {
        // int_0^1 1/(1+x^2) = pi/4
        let v = integrate_adaptive(&|x: f64| re(1.0 / (1.0 + x * x)), 0.0, 1.0, 1e-12).unwrap();
        assert!((v.re - std::f64::consts::FRAC_PI_4).abs() < 1e-11);
    }
}
