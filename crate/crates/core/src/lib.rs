//! Finite signal models over polynomial algebras `C[x]/p(x)`, the trigonometric
//! transforms that decompose them, and residual-based checks of the identities
//! connecting them.

pub mod checks;
pub mod gmrf;
pub mod linalg;
pub mod model;
pub mod poly;
pub mod relations;
pub mod spectral;
pub mod transforms;
pub mod trig;
