//! Alexander polynomials of simple-ribbon knots.
//!
//! A simple-ribbon knot is obtained from a base knot by a sequence of
//! simple ribbon fusions.  Each fusion with parameters `(m, l, p)`
//! multiplies the Alexander polynomial by
//! `F(t; m, l, p) = f(t; m, l, p) f(t^-1; m, l, p)` where
//! `f(t; m, l, p) = (1 - t)^m - t^l (-t)^p`.
//!
//! The crate provides exact Laurent polynomial arithmetic ([`laurent`]),
//! the factors themselves ([`srpoly`]), cheap invariants ([`invariants`]),
//! symbolic Seifert matrix determinants ([`seifert`]), an exhaustive
//! decomposition search ([`srsearch`]), the exponential Diophantine scans
//! behind the arithmetic obstructions ([`numtheory`]), and a table of small
//! knots ([`corpus`]).

pub mod corpus;
pub mod error;
pub mod invariants;
pub mod laurent;
pub mod numtheory;
pub mod seifert;
pub mod srpoly;
pub mod srsearch;

pub use error::{Error, Result};
pub use invariants::{delta2, is_pm_power_product, knot_det, symmetry_check, Delta2Value};
pub use laurent::{LaurentPoly, NormalForm};
pub use srpoly::{f_factor, product_formula, F_factor, SRDecomposition, SRParams};
pub use srsearch::{classify, decompose, Obstruction, SRClassification};
