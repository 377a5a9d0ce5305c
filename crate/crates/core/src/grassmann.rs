//! The superfunction algebra on `R^{m|2n}`: Grassmann multi-indices, graded
//! products, left odd derivatives, Berezin theta-integration, nilpotent
//! Taylor composition and square roots, and the superradius.

mod multi_index;
mod power;
mod superfun;

pub use multi_index::MultiIndex;
pub use power::{
    log_superradius, sqrt_even, superpower_r, superradius_sq, taylor_compose, theta_sq, ScalarMap,
};
pub use superfun::SuperFun;

use thiserror::Error;

use crate::scalar::ScalarError;

/// Dimensions of the superspace `R^{m|2n}`.
///
/// The odd dimension is even by construction (it is `2n`); the superdimension
/// `M = m - 2n` may be any integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpaceDims {
    pub m: usize,
    pub n: usize,
}

impl SpaceDims {
    pub fn new(m: usize, n: usize) -> Result<Self, GrassmannError> {
        if m == 0 {
            return Err(GrassmannError::InvalidDims { m, n });
        }
        Ok(SpaceDims { m, n })
    }

    /// Number of odd coordinates, `2n`.
    pub fn odd(&self) -> usize {
        2 * self.n
    }

    /// Total number of coordinates, `m + 2n`.
    pub fn total(&self) -> usize {
        self.m + 2 * self.n
    }

    /// Superdimension `M = m - 2n`.
    pub fn superdim(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }

    /// Parity of the coordinate with one-based index `k` in `(x, theta)` order.
    pub fn coord_parity(&self, k: usize) -> Parity {
        if k <= self.m {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Z/2 grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_len(len: usize) -> Parity {
        if len.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Odd)
    }

    /// Koszul sign `(-1)^{|a||b|}`.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

/// The Berezin sign exponent `s(m, 2n) = n(2n - 1)`.
pub fn berezin_sign_exponent(n: usize) -> u64 {
    (n as u64) * (2 * n as u64).saturating_sub(1)
}

/// `(-1)^{s(m,2n)}`.
pub fn berezin_sign(n: usize) -> i64 {
    if berezin_sign_exponent(n).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Errors raised by the superfunction algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("invalid dimensions m={m}, n={n}: need m >= 1")]
    InvalidDims { m: usize, n: usize },
    #[error("superspace dimension mismatch: ({0}|{1}) vs ({2}|{3})")]
    DimMismatch(usize, usize, usize, usize),
    #[error("odd index {j} out of range 1..={odd}")]
    ThetaIndexOutOfRange { j: usize, odd: usize },
    #[error("operation requires a parity-homogeneous superfunction")]
    MixedParity,
    #[error("argument must be even with all Grassmann degrees >= 2")]
    NotNilpotentEven,
    #[error("base must be a positive constant or positive radial power, got {0}")]
    BaseNotRadialPower(String),
    #[error("logarithm base must be a pure radial power with unit coefficient, got {0}")]
    LogBaseNotUnit(String),
    #[error("square root requires an even superfunction")]
    OddInput,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Coefficient rings a superfunction can be written over.
///
/// Coefficients are purely even: all odd structure lives in the Grassmann
/// multi-indices, so graded signs never depend on the coefficient values.
pub trait CoeffRing: Clone + PartialEq + std::fmt::Debug {
    fn zero(m: usize) -> Self;
    fn one(m: usize) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &crate::scalar::Rational) -> Self;
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
}

/// Coefficient rings supporting partial derivatives along the even axes.
pub trait CoeffDerive: CoeffRing {
    fn x_derive(&self, axis: usize) -> Result<Self, ScalarError>;
}

/// Coefficient rings with exact division.
pub trait CoeffField: CoeffRing {
    fn inv(&self) -> Result<Self, ScalarError>;
}

impl CoeffField for crate::scalar::RadialFrac {
    fn inv(&self) -> Result<Self, ScalarError> {
        self.inv()
    }
}

impl CoeffRing for crate::scalar::RadialCoeff {
    fn zero(m: usize) -> Self {
        crate::scalar::RadialCoeff::zero(m)
    }
    fn one(m: usize) -> Self {
        crate::scalar::RadialCoeff::one(m)
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn neg(&self) -> Self {
        self.neg()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, c: &crate::scalar::Rational) -> Self {
        self.scale(c)
    }
}

impl CoeffDerive for crate::scalar::RadialCoeff {
    fn x_derive(&self, axis: usize) -> Result<Self, ScalarError> {
        self.derive(axis)
    }
}

impl CoeffRing for crate::scalar::RadialFrac {
    fn zero(m: usize) -> Self {
        crate::scalar::RadialFrac::zero(m)
    }
    fn one(m: usize) -> Self {
        crate::scalar::RadialFrac::one(m)
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn neg(&self) -> Self {
        self.neg()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, c: &crate::scalar::Rational) -> Self {
        self.scale(c)
    }
}

impl CoeffDerive for crate::scalar::RadialFrac {
    fn x_derive(&self, axis: usize) -> Result<Self, ScalarError> {
        self.derive(axis)
    }
}
