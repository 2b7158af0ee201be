//! Fronts of the Euclidean plane: spheres, contact elements, rays and
//! offsets, in `f64`.
//!
//! A contact element is stored as a focus with a unit normal.

mod front;
mod geometry;

use thiserror::Error;

pub use front::{offset_front, Offset, OrientedFront};
pub use geometry::{
    collinearity_check, external_touch_constant, external_touch_point, internal_touch_point, perpendicular_check, ray_point,
    ContactElement, Orientation, Point2, Sphere, UNIT_TOLERANCE,
};

/// Tolerance used when none is given.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum WavefrontError {
    #[error("spheres do not touch externally")]
    NotTouching,
    #[error("distance undefined: the points coincide")]
    Coincident,
    #[error("expected a positive distance, got {0}")]
    NonPositive(f64),
    #[error("normal has length {0}, expected 1")]
    NotUnit(f64),
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("malformed front: {0}")]
    Shape(String),
    #[error("{0}")]
    Parse(String),
}
