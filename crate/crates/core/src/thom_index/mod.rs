//! Densities, integration, the formal Thom calculus and index evaluators.

mod density;
mod index;
mod quadrature;
mod symplectic;
mod thom;
mod value;

pub use density::{integrate, invariance_residual, modular_cocycle, Density, Domain};
pub use index::{index_dirac, index_euler, index_general, index_signature, IndexInput, IndexReport, IndexSymbol};
pub use quadrature::{integrate as quadrature, Quadrature, QuadratureResult, Region};
pub use symplectic::PullbackModel;
pub use thom::{fiber_integrate, pullback_thom, thom_class, thom_integral, thom_map, Orientation, ThomForm};
pub use value::{ExactValue, Value};
