//! Exact structure-constant computations for the Jordan superalgebra JP_n,
//! its irreducible bimodules and Wedderburn complements in square-zero
//! extensions.

pub mod bimodule;
pub mod error;
pub mod graded;
pub mod identities;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod peirce;
pub mod report;
pub mod scalar;
pub mod wpt;

pub use error::{Error, Result};
pub use graded::{BasisEntry, Element, Family, GradedAlgebra, GradedBasis, Homogeneity, Label, Parity};
pub use report::{Report, Violation};
pub use scalar::{AffineForm, Coeff, Rational, Unknown, UnknownFamily};
