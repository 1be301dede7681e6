//! Quadrature: adaptive Gauss–Kronrod on intervals, Gauss–Gegenbauer rules,
//! and product rules on spheres.

mod gauss;
mod gk;
mod sphere;

pub use gauss::{gamma_half, gauss_gegenbauer, unit_sphere_area, GegenbauerBasis};
pub use gk::{integrate, integrate_breaks, qk21, Estimate, Tolerance};
pub use sphere::SphericalQuadrature;
