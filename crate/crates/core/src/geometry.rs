//! Supermetrics, Christoffel symbols, OSp frames, gradient, the three
//! divergence formulas, the super Laplacian, and the Noether current of a
//! superharmonic function.

mod metric;
mod ops;
mod vector;

pub use metric::{
    berezin_prefactor, boundary_sign, flat_metric_matrix, sqrt_even_frac, to_frac, try_to_radial,
    Metric, OSpFrame,
};
pub use ops::{
    christoffel, divergence_flat, divergence_i, divergence_ii, divergence_iii, euler_field,
    flat_frame, gradient, gradient_flat, laplacian, laplacian_flat, noether_current, outer_normal,
    radial_tau_field,
};
pub use vector::VectorField;

use thiserror::Error;

use crate::grassmann::GrassmannError;
use crate::scalar::ScalarError;
use crate::superlinalg::LinalgError;

/// Errors from the geometry layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("metric matrix shape does not match the superspace dimensions")]
    MetricShape,
    #[error("metric must be an even supermatrix")]
    MetricNotEven,
    #[error("metric must be supersymmetric")]
    MetricNotSupersymmetric,
    #[error("frame has the wrong shape for the superspace")]
    FrameShape,
    #[error("frame Gram matrix deviates from the standard form at ({0},{1})")]
    FrameNotOrthosymplectic(usize, usize),
    #[error("|sdet g| has no exact square root in the coefficient ring")]
    SqrtUnavailable,
    #[error("metric carries no OSp frame")]
    FrameUnavailable,
    #[error("operation requires a parity-homogeneous input")]
    MixedParity,
    #[error("superfunction is not harmonic")]
    NotHarmonic,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
