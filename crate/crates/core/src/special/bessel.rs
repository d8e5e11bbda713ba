//! Bessel J of complex order and positive real argument.
//!
//! Oracle-grade evaluation for the transform checks: the ascending series is
//! used while cancellation stays below ~9 digits (x <= 26), the Hankel
//! asymptotic expansion beyond. Orders up to |nu| ~ 12 and arguments up to a
//! few hundred are supported, which covers every quadrature in this crate;
//! anything outside is rejected rather than silently degraded.

use num_complex::Complex;

use super::gamma::gamma;
use crate::scalar::{fl, Cx, Scalar};
use crate::{Error, Result};

const SERIES_CUTOFF: f64 = 26.0;
const MAX_X: f64 = 2000.0;

/// J_nu(x) for complex order nu and real x >= 0.
pub fn bessel_j<S: Scalar>(nu: Cx<S>, x: S) -> Result<Cx<S>> {
    let xf = x.to_f64().unwrap_or(f64::NAN);
    if !(xf >= 0.0) {
        return Err(Error::domain(format!("bessel_j: x = {x} must be >= 0")));
    }
    let nu_abs = nu.norm().to_f64().unwrap_or(f64::INFINITY);
    if xf <= SERIES_CUTOFF {
        if nu_abs > 121.0 {
            return Err(Error::domain(format!("bessel_j: |nu| = {nu_abs:.1} out of oracle regime")));
        }
        Ok(series(nu, x))
    } else if xf <= MAX_X {
        if nu_abs > 12.5 {
            return Err(Error::domain(format!(
                "bessel_j: |nu| = {nu_abs:.1} too large for the asymptotic regime at x = {xf:.1}"
            )));
        }
        hankel(nu, x)
    } else {
        Err(Error::domain(format!("bessel_j: x = {xf:.1} out of oracle regime")))
    }
}

/// Ascending series sum_k (-1)^k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)),
/// with the ratio recursion so only Gamma(nu+1) is evaluated explicitly.
fn series<S: Scalar>(nu: Cx<S>, x: S) -> Cx<S> {
    if x.is_zero() {
        // J_0(0) = 1; Re nu > 0 vanishes at 0 (purely imaginary order is
        // never requested exactly at x = 0 by the quadratures).
        return if nu.re.is_zero() && nu.im.is_zero() {
            Complex::new(S::one(), S::zero())
        } else {
            Complex::new(S::zero(), S::zero())
        };
    }
    let half_x = x * fl::<S>(0.5);
    let m_quarter_x2 = Complex::new(-(half_x * half_x), S::zero());
    // (x/2)^nu / Gamma(nu+1)
    let mut term = (nu * half_x.ln()).exp() / gamma(nu + S::one());
    let mut sum = term;
    for k in 1..400usize {
        let kf = fl::<S>(k as f64);
        term = term * m_quarter_x2 / ((nu + kf) * kf);
        sum += term;
        if term.norm() < fl::<S>(1e-18) * sum.norm().max(fl::<S>(1e-280)) && k > 4 {
            break;
        }
    }
    sum
}

/// Hankel asymptotic expansion
/// J_nu(x) ~ sqrt(2/(pi x)) [ P cos(omega) - Q sin(omega) ],
/// omega = x - nu pi/2 - pi/4,
/// P = sum (-1)^k u_{2k}, Q = sum (-1)^k u_{2k+1},
/// u_j = u_{j-1} (4 nu^2 - (2j-1)^2) / (8 j x).
fn hankel<S: Scalar>(nu: Cx<S>, x: S) -> Result<Cx<S>> {
    let mu = nu * nu * fl::<S>(4.0);
    let mut u = Complex::new(S::one(), S::zero());
    let mut p = u;
    let mut q = Complex::new(S::zero(), S::zero());
    let mut best = f64::INFINITY;
    let mut achieved = f64::INFINITY;
    for j in 1..40usize {
        let tj = fl::<S>((2 * j - 1) as f64);
        u = u * (mu - tj * tj) / (fl::<S>(8.0 * j as f64) * x);
        let mag = u.norm().to_f64().unwrap_or(f64::INFINITY);
        if mag > best {
            // asymptotic series started diverging; stop at the best term
            achieved = best;
            break;
        }
        best = mag;
        let signed = if (j / 2) % 2 == 0 { u } else { -u };
        if j % 2 == 1 {
            q += signed;
        } else {
            p += signed;
        }
        if mag < 1e-17 {
            achieved = mag;
            break;
        }
        achieved = mag;
    }
    if achieved > 1e-9 {
        return Err(Error::domain(format!(
            "bessel_j asymptotic stalled at {achieved:.2e} for nu = {nu}, x = {x}"
        )));
    }
    let omega = Complex::new(x, S::zero()) - nu * fl::<S>(std::f64::consts::FRAC_PI_2)
        - fl::<S>(std::f64::consts::FRAC_PI_4);
    let amp = (fl::<S>(2.0) / (S::PI() * x)).sqrt();
    Ok((p * omega.cos() - q * omega.sin()) * amp)
}
