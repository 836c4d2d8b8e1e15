//! Graded-commutative polynomial quotient algebras over F2.
//!
//! All variables commute without signs. Over F2 this is correct for
//! variables of any degree.

mod algebra;
mod groebner;
mod polynomial;
mod presentation;
mod ring;

pub use algebra::{DualityReport, Nilpotency, QuotientAlgebra};
pub use groebner::{buchberger, reduce};
pub use polynomial::Polynomial;
pub use presentation::Presentation;
pub use ring::{GradedVariable, Monomial, PolyRing};
