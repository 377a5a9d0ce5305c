//! Exact symbolic calculus on flat semi-Riemannian superspace `R^{m|2n}`.
//!
//! The crate implements a small computer-algebra kernel for superfunctions
//! with radial coefficients, Berezin integration with respect to retractions,
//! supermatrix algebra (supertrace, Berezinian), divergence operators and the
//! super Laplacian, and exact integration over superspheres and superballs
//! with a symbolic radius `L`. All arithmetic is exact over the rationals;
//! every identity checked by the verifier suite holds to literal equality in
//! the value ring `Q * pi^{k/2} * L^q`.

pub mod cli;
pub mod geometry;
pub mod grassmann;
pub mod harmonic;
pub mod integrate;
pub mod sample;
pub mod scalar;
pub mod superlinalg;

pub use scalar::{ExactValue, PiLPoly, Rational};
