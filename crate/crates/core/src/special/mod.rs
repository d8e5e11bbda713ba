//! Special-function kernels, generic over the working scalar.

mod bessel;
mod gamma;
mod legendre;
mod zeta;

pub use bessel::bessel_j;
pub use gamma::{beta, digamma, gamma};
pub use legendre::gauss_legendre;
pub use zeta::{hurwitz_zeta, zeta};
