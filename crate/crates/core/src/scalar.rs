//! Scalar abstraction and compensated summation.
//!
//! The numeric kernels (special functions, quadrature, test functions) are
//! generic over [`Scalar`] so the same code instantiates at `f32` and `f64`.
//! Concrete aliases live at the crate root; everything tolerance-bearing runs
//! on `f64`.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating scalar usable by every generic kernel in this crate.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Convert an `f64` literal into the working scalar type.
#[inline]
pub fn fl<S: Scalar>(x: f64) -> S {
    S::from_f64(x).expect("f64 constant must convert into the scalar type")
}

/// Convert a `usize` into the working scalar type.
#[inline]
pub fn fu<S: Scalar>(n: usize) -> S {
    S::from_usize(n).expect("usize must convert into the scalar type")
}

/// Complex value over the working scalar.
pub type Cx<S> = Complex<S>;

/// Neumaier-compensated accumulator.
///
/// Like Kahan summation but robust when the incoming term is larger than the
/// running sum, which happens in the oscillatory panel sums.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<S: Scalar> {
    sum: S,
    comp: S,
}

impl<S: Scalar> Default for CompensatedSum<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> CompensatedSum<S> {
    pub fn new() -> Self {
        Self { sum: S::zero(), comp: S::zero() }
    }

    #[inline]
    pub fn add(&mut self, v: S) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> S {
        self.sum + self.comp
    }

    pub fn sum_iter<I: IntoIterator<Item = S>>(iter: I) -> S {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

/// Componentwise compensated accumulator for complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplex<S: Scalar> {
    re: CompensatedSum<S>,
    im: CompensatedSum<S>,
}

impl<S: Scalar> CompensatedComplex<S> {
    pub fn new() -> Self {
        Self { re: CompensatedSum::new(), im: CompensatedSum::new() }
    }

    #[inline]
    pub fn add(&mut self, v: Cx<S>) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    #[inline]
    pub fn value(&self) -> Cx<S> {
        Complex::new(self.re.value(), self.im.value())
    }

    pub fn sum_iter<I: IntoIterator<Item = Cx<S>>>(iter: I) -> Cx<S> {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_beats_naive() {
        // 1 + 1e-16 repeated: naive f64 loses the small terms entirely.
        let mut acc = CompensatedSum::<f64>::new();
        acc.add(1.0);
        for _ in 0..1_000_000 {
            acc.add(1e-16);
        }
        let exact = 1.0 + 1e-10;
        assert!((acc.value() - exact).abs() < 1e-15);
    }

    #[test]
    fn complex_sum_matches_parts() {
        let terms: Vec<Complex<f64>> = (1..100)
            .map(|k| Complex::new(1.0 / k as f64, -1.0 / (k * k) as f64))
            .collect();
        let s = CompensatedComplex::sum_iter(terms.iter().copied());
        let re: f64 = terms.iter().map(|z| z.re).sum();
        let im: f64 = terms.iter().map(|z| z.im).sum();
        assert!((s.re - re).abs() < 1e-12 && (s.im - im).abs() < 1e-12);
    }
}
