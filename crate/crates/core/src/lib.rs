//! Numerical geometry of translating solitons of mean curvature flow.
//!
//! The crate evaluates, at grid scale, the pointwise identities that govern
//! translators `H = <e3, ν>`: drift Laplacians of coordinate functions, the
//! universal superharmonic function built from tilted grim reapers, geodesics
//! of the conformal metric `e^{x3} <,>` and their equidistant foliations, and
//! Gaussian-area and volume-growth estimators.

pub mod catalog;
pub mod checks;
pub mod diffgeo;
pub mod error;
pub mod fields;
pub mod foliation;
pub mod grid;
pub mod ilmanen;
pub mod measures;
pub mod report;
pub mod translator;

pub use error::{Error, Result};

pub type Vec3 = nalgebra::Vector3<f64>;
