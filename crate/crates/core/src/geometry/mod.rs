//! Upper half-plane and upper half-space models: Möbius actions, distances,
//! Busemann functions, visual angles, boundary arcs and geodesic projections.

mod arc;
mod geodesic;
mod metric;
mod mobius;
mod point;

pub use arc::{BoundaryArc, BoundarySet};
pub use geodesic::{geodesic_cocycle, project_to_geodesic, Geodesic, Projection};
pub use metric::{
    boundary_at_angle, boundary_from_direction, busemann, dir, direction_angles, dist, dist_via_norm,
    visual_angle, visual_angle_of_point, visual_direction, visual_direction_boundary, wrap_angle,
};
pub use mobius::{MatrixKey, MoebiusMap, DET_TOLERANCE};
pub use point::{BoundaryPoint, Model, ModelPoint, MIN_HEIGHT};

/// Normalized visual measure of a boundary set seen from `x`.
pub fn visual_mass(x: &ModelPoint, omega: &BoundarySet) -> f64 {
    omega.visual_mass(x)
}
