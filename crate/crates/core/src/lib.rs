//! Spectral p-norms on Euclidean Jordan algebras.
//!
//! The crate provides the supported algebras (direct sums of real lines, spin
//! factors, real symmetric and complex Hermitian matrix algebras) with their
//! spectral decompositions, linear maps on them together with a multistart
//! estimator of mixed operator norms `||T||_{r→s}`, the interpolation bounds
//! relating such norms, and brute-force oracles for the constants involved.

pub mod algebra;
pub mod appendix;
pub mod eigen;
pub mod element;
pub mod error;
pub mod exponent;
pub mod interpolation;
pub mod linmap;
pub mod random;

pub use algebra::{Algebra, Factor};
pub use element::{Element, SpectralDecomposition};
pub use error::{Error, Result};
pub use exponent::ExtExponent;
