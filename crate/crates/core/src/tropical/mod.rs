//! Max-plus arithmetic and the basic objects of the tropical projective torus.
//!
//! Points of `R^e / R·1` are stored with their first coordinate shifted to
//! zero, so two points are equal as torus elements exactly when their stored
//! coordinates are equal.

mod matrix;
pub(crate) mod point;
mod polytope;
mod segment;

pub use matrix::{trop_det, TropDet, TropMatrix};
pub use point::{normalize, trop_dist, TropPoint};
pub use polytope::{contains, project, project_onto, TropPolytope};
pub use segment::{trop_segment, TropSegment};

/// Tolerance used by membership and fixed-point tests unless a caller
/// supplies its own.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tropical addition `x ⊕ y = max(x, y)`; `-∞` is the identity.
#[inline]
pub fn trop_add(x: f64, y: f64) -> f64 {
    x.max(y)
}

/// Tropical multiplication `x ⊙ y = x + y`; `-∞` is absorbing.
#[inline]
pub fn trop_mul(x: f64, y: f64) -> f64 {
    if x == f64::NEG_INFINITY || y == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else {
        x + y
    }
}
