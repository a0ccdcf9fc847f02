//! Centers of mass, moments and masses in the hyperbolic plane.
//!
//! Point-mass systems, linear sets on geodesics and laminae with density are
//! handled with one model-free notion of moment (`weight * sinh distance`)
//! and centroid. Numerical quadrature results can be checked against the
//! closed forms in [`closed`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod archimedes;
pub mod closed;
pub mod error;
pub mod minkowski;
pub mod plane;
pub mod pointmass;
pub mod lamina;
pub mod linset;
pub mod quadrature;
pub mod region;
pub mod trig;

#[cfg(test)]
pub(crate) mod testutil;

pub use archimedes::{archimedes_moment, pencil_slice, Pencil};
pub use closed::{
    disk_area, disk_mass, median_point, ngon_mass, ngon_side, polygon_area, segment_mass, triangle_mass_about,
    triangle_mass_formula, wedge_centroid, WedgeResult,
};
pub use error::{Error, Result};
pub use lamina::{
    area, decompose_and_combine, delta_transversal, delta_transversal_with_cap, lamina_centroid, lamina_mass,
    lamina_mass_about, lamina_moment, Density, Estimate, Lamina, LaminaCentroid, Transversal,
};
pub use linset::{
    linset_centroid, linset_centroid_mass, linset_mass, linset_moment_about_line, linset_moment_about_point,
    LineDensity, LinearSet,
};
pub use plane::{
    convert, dist, foot_of_perpendicular, line_through, midpoint, point_along, signed_sinh_dist, DirectedLine, Frame,
    GaussGeodesic, HPoint, Model, ModelCoords,
};
pub use pointmass::{
    combine, external_centroid, is_balanced, lever_resultant, moment_about_line, moment_about_point, system_centroid,
    system_mass_direct, system_moment, LeverForce, LeverResultant, PointMass, PointMassSystem,
};
pub use quadrature::{GaussLegendre, QuadratureConfig};
pub use region::Region;
pub use trig::{ceva_product, law_of_cosines, law_of_sines_residual, menelaus_product, Triangle};
