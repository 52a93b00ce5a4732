//! Exact computation of Picard-graded homogeneous coordinate rings.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactmath`]: rationals, rational functions, linear algebra, polynomials
//! * [`grading`]: finitely generated abelian groups via Smith normal form
//! * [`ratcurve`]: projective lines with multiplied points, divisors, section spaces
//! * [`coxalg`]: graded section algebras, shifting families, presentations and checks
//! * [`toric`]: the polynomial Cox ring of a fan

pub mod coxalg;
pub mod exactmath;
pub mod grading;
pub mod ratcurve;
pub mod toric;

pub use exactmath::{Rational, RationalFunction};
