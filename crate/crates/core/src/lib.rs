//! Numerical differential geometry of plane curves and surfaces.
//!
//! The engine computes curvature in the graphed, parametric and implicit
//! representations, evaluates intrinsic curvature from the coefficients
//! `E, F, G` of the first fundamental form alone, and checks the classical
//! identities that tie the two together: invariance of curvature under
//! isometry, the flatness criterion, total curvature of closed surfaces
//! and the angle excess of geodesic triangles.
//!
//! All derivatives come from forward-mode jets ([`jets`]) applied to
//! expressions parsed from text ([`expr`]).

pub mod catalog;
pub mod curves;
mod error;
pub mod expr;
pub mod geodesics;
pub mod grid;
pub mod intrinsic;
pub mod jets;
pub mod quad;
pub mod surfaces;
pub mod table;

pub use error::{Error, Result};

/// Regularity threshold shared by all quotient formulas.
pub const EPS_REG: f64 = 1e-12;
