//! Computational Lie algebroid calculus.
//!
//! Presentations of Lie algebroids in a frame over a single chart, their
//! Chevalley-Eilenberg complexes, Chern-Weil forms of algebroid connections,
//! a formal Thom-class calculus on the cotangent pull-back algebroid, and
//! evaluators for the topological side of the Euler, signature and Dirac
//! index formulas. Finite groupoids get their cochain complex, convolution
//! algebra and trace.

#![allow(clippy::needless_range_loop)]

pub mod algebroid;
pub mod ce;
pub mod chern_weil;
pub mod error;
pub mod groupoid;
pub mod linalg;
pub mod scalar;
pub mod thom_index;

pub use algebroid::{AlgebroidMorphism, AlgebroidPresentation, ValidationReport};
pub use ce::{AlgForm, Blade, Representation, VectorForm};
pub use chern_weil::{CharacteristicClass, FormMatrix, GConnection, Metric};
pub use error::{Error, Result};
pub use groupoid::{FiniteGroupoid, FiniteRep};
pub use scalar::{Expr, Poly, Scalar};
