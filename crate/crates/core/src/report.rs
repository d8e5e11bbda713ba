//! Shared result-carrier types: truncated values and identity reports.

use serde::{Deserialize, Serialize};

use crate::C64;

/// Value of a truncated infinite sum or integral, with its tail bound.
///
/// The tail bound is rigorous where a usable rigorous bound exists (stated
/// at each producer) and an extrapolation-validated heuristic elsewhere; it
/// is always finite and >= 0.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TruncatedValue {
    pub re: f64,
    pub im: f64,
    pub tail_bound: f64,
    pub terms_used: u64,
}

impl TruncatedValue {
    pub fn new(value: C64, tail_bound: f64, terms_used: u64) -> Self {
        debug_assert!(tail_bound.is_finite() && tail_bound >= 0.0);
        Self { re: value.re, im: value.im, tail_bound, terms_used }
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re, self.im)
    }
}

/// Structured residual record for one identity check.
///
/// `pass` holds iff `abs_err <= tol_abs + tol_rel * |lhs| + lhs_tail + rhs_tail`,
/// with the tolerances recorded in the report itself.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub params: String,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub lhs_tail: f64,
    pub rhs_tail: f64,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub pass: bool,
}

impl IdentityReport {
    pub fn build(
        name: impl Into<String>,
        params: impl Into<String>,
        lhs: C64,
        rhs: C64,
        lhs_tail: f64,
        rhs_tail: f64,
        tol_abs: f64,
        tol_rel: f64,
    ) -> Self {
        let abs_err = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel_err = if scale > 0.0 { abs_err / scale } else { 0.0 };
        let pass = abs_err <= tol_abs + tol_rel * lhs.norm() + lhs_tail + rhs_tail;
        Self {
            name: name.into(),
            params: params.into(),
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            abs_err,
            rel_err,
            lhs_tail,
            rhs_tail,
            tol_abs,
            tol_rel,
            pass,
        }
    }

    pub fn lhs(&self) -> C64 {
        C64::new(self.lhs_re, self.lhs_im)
    }

    pub fn rhs(&self) -> C64 {
        C64::new(self.rhs_re, self.rhs_im)
    }

    /// One-line summary for logs and CSV.
    pub fn summary(&self) -> String {
        format!(
            "{}: {} [{}] abs_err={:.3e} rel_err={:.3e} tails={:.3e}",
            self.name,
            if self.pass { "pass" } else { "FAIL" },
            self.params,
            self.abs_err,
            self.rel_err,
            self.lhs_tail + self.rhs_tail
        )
    }
}
