//! Numerical and exact-arithmetic verification of polyharmonic analysis:
//! bubbles, Pohozaev boundary functionals, flat Green's functions, homogeneous
//! polynomial corrections, Giraud integrals and GJMS operators on the round sphere.

pub mod error;
pub mod exact;
pub mod series;
pub mod quadrature;
pub mod radial;
pub mod bubble;
pub mod harmonic_poly;
pub mod pohozaev;
pub mod green_flat;
pub mod giraud;
pub mod sphere_gjms;
pub mod cli;

pub use error::{Error, Result};
pub use radial::{ClosedFormRadial, Dimension, RadialJet, SphereArea};
