//! Exact computations for free finite-group actions on Dold manifolds and
//! on products of even spheres with complex projective spaces.
//!
//! * [`f2algebra`]: quotient algebras over F2 with Gröbner normal forms.
//! * [`spaces`]: the cohomology catalog and the parity functions `mu`, `eta`.
//! * [`lefschetz`]: sign automorphisms, Lefschetz numbers and rank searches.
//! * [`spectral`]: a first-quadrant Leray–Serre page engine and the two
//!   orbit-space cases for free involutions on Dold manifolds.
//! * [`involutions`]: floating-point models of the explicit actions.

pub mod error;
pub mod f2algebra;
pub mod involutions;
pub mod lefschetz;
pub mod linalg;
pub mod spaces;
pub mod spectral;

pub use error::{Error, ErrorKind, Result};
pub use f2algebra::{Monomial, Nilpotency, PolyRing, Polynomial, Presentation, QuotientAlgebra};
pub use lefschetz::{Sign, SignAutomorphism, SignSubgroup};
pub use spaces::{Factor, Flavor, ProductSpace};
pub use spectral::{BigradedPage, FibrationSpec, SpectralRun};
