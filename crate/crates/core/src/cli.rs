//! Command-line front end: a small expression parser for superfunctions and
//! vector fields, dispatch into the library, and exact results as text or
//! JSON.
//!
//! Exit codes: 0 on success or verified equality, 2 on verified inequality,
//! 1 on usage or parse errors.

mod commands;
mod parser;

pub use commands::run_with_args;
pub use parser::{lower, parse, parse_superfun, ExprAst};

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::grassmann::GrassmannError;
use crate::harmonic::HarmonicError;
use crate::integrate::IntegrateError;
use crate::scalar::ScalarError;

/// Errors surfaced on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("odd power of r or R at position {pos}; only even integer exponents are defined")]
    OddRadialPower { pos: usize },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Integrate(#[from] IntegrateError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}
