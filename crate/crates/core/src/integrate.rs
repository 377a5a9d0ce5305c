//! Exact integration over the supersphere and superball with symbolic
//! radius `L`: Berezin integrals with respect to the spherical retraction
//! and the standard retraction, volumes, boundary fluxes, and the
//! change-of-retraction boundary term.

mod ball;
mod boundary;
mod omega;
mod sphere;

pub use ball::{ball_integral, ball_pil, ball_volume};
pub use boundary::{
    boundary_flux, boundary_flux_pil, boundary_term, boundary_term_direct,
    boundary_term_direct_pil, boundary_term_pil, flat_pairing,
};
pub use omega::AngularCoeff;
pub use sphere::{pullback_sphere, sphere_integral, sphere_pil, sphere_volume, SphereIntegrand};

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::grassmann::GrassmannError;
use crate::scalar::ScalarError;

/// The retraction a non-compact Berezin integral is taken with respect to.
///
/// `Gamma` is the spherical retraction with `gamma^*(x^j) = x^j sqrt(1 +
/// theta^2/r^2)`, under which the superradius restricts to the boundary
/// radius; `Std` is the standard retraction `gamma_std^*(x^j) = x^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RetractionTag {
    Gamma,
    Std,
}

/// Errors from the integration layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegrateError {
    #[error("cannot pull back fractional radial exponent r^{0} to the sphere")]
    FractionalExponent(String),
    #[error("logarithmic coefficients cannot appear under an integral")]
    LogUnderIntegral,
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
