//! Fractions of radial coefficients.
//!
//! Inverse supermetrics and Berezinians of general even supermatrices have
//! entries like `1/(1 + p(x))` that live outside the radial ring itself.
//! Fractions are kept unreduced apart from a scale normalization; equality
//! is decided by cross-multiplication, which is exact because the radial
//! ring is an integral domain with canonical zero-testing.

use std::fmt;

use num_traits::{One, Zero};

use super::radial::RadialCoeff;
use super::rational::Rational;
use super::ScalarError;

/// A quotient `num / den` of radial coefficients with `den != 0`.
#[derive(Debug, Clone)]
pub struct RadialFrac {
    num: RadialCoeff,
    den: RadialCoeff,
}

impl RadialFrac {
    pub fn new(num: RadialCoeff, den: RadialCoeff) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: RadialCoeff, mut den: RadialCoeff) -> Self {
        if num.is_zero() {
            return RadialFrac {
                den: RadialCoeff::one(num.m()),
                num,
            };
        }
        // normalize the lex-leading coefficient of the denominator to 1
        let lead = den.lead_coeff().expect("denominator is nonzero");
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RadialFrac { num, den }
    }

    pub fn from_radial(num: RadialCoeff) -> Self {
        let den = RadialCoeff::one(num.m());
        RadialFrac { num, den }
    }

    pub fn zero(m: usize) -> Self {
        Self::from_radial(RadialCoeff::zero(m))
    }

    pub fn one(m: usize) -> Self {
        Self::from_radial(RadialCoeff::one(m))
    }

    pub fn m(&self) -> usize {
        self.num.m()
    }

    pub fn num(&self) -> &RadialCoeff {
        &self.num
    }

    pub fn den(&self) -> &RadialCoeff {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RadialFrac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Quotient rule derivative along `x^i`.
    pub fn derive(&self, i: usize) -> Result<Self, ScalarError> {
        let num = self
            .num
            .derive(i)?
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derive(i)?));
        Ok(Self::normalized(num, self.den.mul(&self.den)))
    }

    /// Exact square root when both sides admit one (possibly after moving
    /// the denominator across: `n/d = nd/d^2`).
    pub fn sqrt(&self) -> Option<Self> {
        if self.num.is_zero() {
            return Some(self.clone());
        }
        if let (Some(n), Some(d)) = (self.num.sqrt(), self.den.sqrt()) {
            return Some(Self::normalized(n, d));
        }
        let n = self.num.mul(&self.den).sqrt()?;
        Some(Self::normalized(n, self.den.clone()))
    }

    /// Back to the plain ring when the denominator is a nonzero constant.
    pub fn as_radial(&self) -> Option<RadialCoeff> {
        let c = self.den.as_constant()?;
        if c.is_zero() {
            return None;
        }
        Some(self.num.scale(&c.recip()))
    }
}

impl PartialEq for RadialFrac {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RadialFrac {}

impl fmt::Display for RadialFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
