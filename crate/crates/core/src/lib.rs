//! Computations in SU(2,n;F) for F = R or C.
//!
//! The crate covers the Iwasawa AN subalgebra in explicit coordinates, its
//! closed-form exponential and bracket, the Cartan projection, growth of
//! one-parameter curves against the Weyl-chamber walls, constructors for
//! the subgroup families `H_B` and `H_c`, and a classifier that evaluates
//! the structural conditions for a compact quotient.

pub mod ancoords;
pub mod classifier;
pub mod error;
pub mod families;
pub mod growth;
pub mod io;
pub mod linalg;
pub mod sampling;
pub mod scalars;
pub mod selftest;
pub mod sunf;

pub use ancoords::{ANElement, RootLabel};
pub use error::{Error, Result};
pub use families::{BMap, SubalgebraSpec};

pub use scalars::{CMat, FieldTag, Scalar, DEFAULT_TOL};
pub use sunf::{CartanPoint, GroupContext, GroupMatrix};
