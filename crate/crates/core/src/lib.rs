//! Numerics for sums of Kloosterman sums and spectral exponential sums.
//!
//! The crate evaluates, at desk scale, the objects that appear in
//! Kuznetsov-style analyses of sums of Kloosterman sums: the classical sums
//! `S(m,n;c)`, the square-root counts `ρ_q`/`λ_q`, Zagier's generalized
//! Dirichlet L-functions `𝓛_m(s)`, a damped oscillatory test-function family
//! (`φ`, `φ̂`, `φ₀`, `φ_B`, `Φ(n,s)`), and the exact identities tying them
//! together. Every closed form is paired with an independent oracle (direct
//! summation, enumeration, or quadrature of the defining integral), and the
//! identity checks report explicit truncation tails next to their residuals.
//!
//! Layering:
//! * [`scalar`], [`special`], [`quad`], [`testfun`] are generic over the
//!   floating scalar via [`scalar::Scalar`]; concrete `f64` aliases are below.
//! * [`arith`], [`kloosterman`], [`lfun`] work in exact integer arithmetic
//!   where the values are exact, `f64` elsewhere.
//! * [`identities`] and [`experiments`] orchestrate the end-to-end checks.

pub mod arith;
pub mod experiments;
pub mod fixtures;
pub mod identities;
pub mod kloosterman;
pub mod lfun;
pub mod quad;
pub mod reduce;
pub mod report;
pub mod scalar;
pub mod special;
pub mod testfun;

use num_complex::Complex;

/// Working real scalar for the tolerance-bearing layers.
pub type Real = f64;
/// Working complex scalar.
pub type C64 = Complex<Real>;
/// Test-function parameter pack over the working scalar.
pub type Params = testfun::TestParams<Real>;
/// Bump-function spec over the working scalar.
pub type Bump = testfun::BumpSpec<Real>;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("n must be positive")]
    ZeroInput,
    #[error("{0} is not a fundamental discriminant (and not 1)")]
    NonFundamental(i64),
    #[error("m = {0} is 2 or 3 mod 4: no discriminant splitting (the L-series vanishes identically)")]
    NotADiscriminant(i64),
    #[error("pole at s = 1")]
    PoleAtOne,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),
    #[error("degenerate test parameters: {0}")]
    DegenerateParams(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("eigenvalue list not sorted strictly increasing at line {line} (pass sort=true to reorder)")]
    NotSorted { line: usize },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
