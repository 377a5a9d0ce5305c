//! The exact value field `Q * pi^{k/2} * L^q` and classical sphere monomial
//! integrals.
//!
//! Half-integer pi exponents are stored doubled, so every value arising from
//! the volume and integration formulas lives in this type exactly. `L` is the
//! symbolic sphere radius; its exponent is an arbitrary rational.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::rational::{as_i64, rat};
use super::{Rational, ScalarError};

/// A value `coeff * pi^(pi_pow_x2 / 2) * L^l_pow`.
///
/// Canonical zero has both exponents zero. Addition is partial: it is defined
/// only between values with equal exponent pairs (or against zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactValue {
    coeff: Rational,
    pi_pow_x2: i64,
    l_pow: Rational,
}

impl ExactValue {
    pub fn new(coeff: Rational, pi_pow_x2: i64, l_pow: Rational) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self {
                coeff,
                pi_pow_x2,
                l_pow,
            }
        }
    }

    pub fn zero() -> Self {
        Self {
            coeff: Rational::zero(),
            pi_pow_x2: 0,
            l_pow: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(coeff: Rational) -> Self {
        Self::new(coeff, 0, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_pow_x2(&self) -> i64 {
        self.pi_pow_x2
    }

    pub fn l_pow(&self) -> &Rational {
        &self.l_pow
    }

    /// Partial addition; both operands must share exponents unless one is zero.
    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_pow_x2 != rhs.pi_pow_x2 || self.l_pow != rhs.l_pow {
            return Err(ScalarError::IncompatibleAddition(
                self.to_string(),
                rhs.to_string(),
            ));
        }
        Ok(Self::new(
            &self.coeff + &rhs.coeff,
            self.pi_pow_x2,
            self.l_pow.clone(),
        ))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            &self.coeff * &rhs.coeff,
            self.pi_pow_x2 + rhs.pi_pow_x2,
            &self.l_pow + &rhs.l_pow,
        )
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::new(
            &self.coeff / &rhs.coeff,
            self.pi_pow_x2 - rhs.pi_pow_x2,
            &self.l_pow - &rhs.l_pow,
        ))
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.coeff.clone(), self.pi_pow_x2, self.l_pow.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.coeff * c, self.pi_pow_x2, self.l_pow.clone())
    }
}

fn pow_str(sym: &str, num: &Rational) -> String {
    if num.is_one() {
        return sym.to_string();
    }
    if let Some(k) = as_i64(num) {
        if k >= 0 {
            return format!("{sym}^{k}");
        }
    }
    format!("{sym}^({num})")
}

impl fmt::Display for ExactValue {
    /// Pretty form `p/q * pi^(j/2) * L^(p/q)` with unit factors elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        let coeff_is_unit = self.coeff.is_one() || self.coeff == rat(-1);
        let has_symbol = self.pi_pow_x2 != 0 || !self.l_pow.is_zero();
        if !coeff_is_unit || !has_symbol {
            parts.push(self.coeff.to_string());
        }
        if self.pi_pow_x2 != 0 {
            let pi_pow = Rational::new(self.pi_pow_x2.into(), 2.into());
            parts.push(pow_str("pi", &pi_pow));
        }
        if !self.l_pow.is_zero() {
            parts.push(pow_str("L", &self.l_pow));
        }
        let sign = if coeff_is_unit && has_symbol && self.coeff.is_negative() {
            "-"
        } else {
            ""
        };
        write!(f, "{}{}", sign, parts.join(" * "))
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ExactValue", 3)?;
        s.serialize_field("coeff", &self.coeff.to_string())?;
        s.serialize_field("pi_pow_x2", &self.pi_pow_x2)?;
        s.serialize_field("L_pow", &self.l_pow.to_string())?;
        s.end()
    }
}

/// A finite sum of `pi^{k/2} L^q` monomials with rational coefficients.
///
/// This is the accumulator behind the integration routines: individual
/// monomial contributions may carry different `L` powers, and the theorems
/// under test make them collapse. Converting to [`ExactValue`] asserts the
/// collapse happened.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiLPoly {
    terms: BTreeMap<(i64, Rational), Rational>,
}

impl PiLPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_value(v: &ExactValue) -> Self {
        let mut p = Self::zero();
        p.add_value(v);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, pi_pow_x2: i64, l_pow: Rational, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry((pi_pow_x2, l_pow))
            .or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add_value(&mut self, v: &ExactValue) {
        self.add_term(v.pi_pow_x2(), v.l_pow().clone(), v.coeff());
    }

    pub fn add(&mut self, rhs: &Self) {
        for ((p, l), c) in &rhs.terms {
            self.add_term(*p, l.clone(), c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for ((p1, l1), c1) in &self.terms {
            for ((p2, l2), c2) in &rhs.terms {
                out.add_term(p1 + p2, l1 + l2, &(c1 * c2));
            }
        }
        out
    }

    pub fn mul_value(&self, v: &ExactValue) -> Self {
        self.mul(&Self::from_value(v))
    }

    /// d/dL, term by term.
    pub fn derive_l(&self) -> Self {
        let mut out = Self::zero();
        for ((p, l), c) in &self.terms {
            out.add_term(*p, l - Rational::one(), &(c * l));
        }
        out
    }

    /// Formal antiderivative `L^p -> L^{p+1}/(p+1)` evaluated from 0 to L.
    ///
    /// Errors on a `L^{-1}` term, which would integrate to a logarithm.
    pub fn radial_antiderive(&self) -> Result<Self, ScalarError> {
        let mut out = Self::zero();
        for ((p, l), c) in &self.terms {
            let lp1 = l + Rational::one();
            if lp1.is_zero() {
                return Err(ScalarError::LogarithmicIntegral(format!("{c} * L^-1")));
            }
            out.add_term(*p, lp1.clone(), &(c / lp1));
        }
        Ok(out)
    }

    /// Collapse into a single monomial; errors if more than one term remains.
    pub fn into_exact(self) -> Result<ExactValue, ScalarError> {
        match self.try_into_exact() {
            Some(v) => Ok(v),
            None => Err(ScalarError::MixedValue(self.to_string())),
        }
    }

    /// Collapse into a single monomial when possible.
    pub fn try_into_exact(&self) -> Option<ExactValue> {
        let mut iter = self.terms.iter();
        match (iter.next(), iter.next()) {
            (None, _) => Some(ExactValue::zero()),
            (Some(((p, l), c)), None) => Some(ExactValue::new(c.clone(), *p, l.clone())),
            _ => None,
        }
    }
}

impl fmt::Display for PiLPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((p, l), c)| ExactValue::new(c.clone(), *p, l.clone()).to_string())
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Gamma(a)` for a positive half-integer `a = twice/2`, as an exact value.
///
/// Integer arguments give `(a-1)!`; half-odd arguments give a rational
/// multiple of `pi^(1/2)`.
pub fn gamma_half(twice: i64) -> Result<ExactValue, ScalarError> {
    if twice <= 0 {
        return Err(ScalarError::NonPositiveGamma(twice));
    }
    if twice % 2 == 0 {
        let mut acc = Rational::one();
        let mut k = twice / 2 - 1;
        while k >= 2 {
            acc *= rat(k);
            k -= 1;
        }
        Ok(ExactValue::from_rational(acc))
    } else {
        // Gamma(j/2) = (j/2 - 1)(j/2 - 2) ... (1/2) * Gamma(1/2)
        let mut acc = Rational::one();
        let mut a = Rational::new((twice - 2).into(), 2.into());
        while a.is_positive() {
            acc *= &a;
            a -= Rational::one();
        }
        Ok(ExactValue::new(acc, 1, Rational::zero()))
    }
}

/// `1/Gamma(a)` for any half-integer `a = twice/2`.
///
/// The reciprocal Gamma function is entire: at the poles `a = 0, -1, -2, ...`
/// this returns exact zero, which is how the volume formulas encode
/// `vol = 0` for non-positive even superdimension.
pub fn rgamma_half(twice: i64) -> ExactValue {
    if twice % 2 == 0 {
        if twice <= 0 {
            return ExactValue::zero();
        }
        let g = gamma_half(twice).expect("positive integer argument");
        ExactValue::from_rational(g.coeff().recip())
    } else {
        // Shift up to a positive argument: Gamma(a) = Gamma(a+k) / (a (a+1) ... (a+k-1))
        let mut prod = Rational::one();
        let mut t = twice;
        while t < 1 {
            prod *= Rational::new(t.into(), 2.into());
            t += 2;
        }
        let g = gamma_half(t).expect("positive by construction");
        // Gamma(twice/2) = g / prod, so 1/Gamma = prod / g.
        ExactValue::new(&prod / g.coeff(), -g.pi_pow_x2(), Rational::zero())
    }
}

/// Integral of the monomial `omega^alpha` over the unit sphere `S^{m-1}`.
///
/// Zero when any exponent is odd; otherwise
/// `2 * prod_i Gamma((alpha_i + 1)/2) / Gamma((|alpha| + m)/2)`.
pub fn sphere_monomial_integral(alpha: &[u32], m: usize) -> ExactValue {
    assert!(m >= 1, "sphere dimension m must be at least 1");
    assert!(alpha.len() <= m, "multi-index has more than m entries");
    if alpha.iter().any(|a| a % 2 == 1) {
        return ExactValue::zero();
    }
    let mut num = ExactValue::from_rational(rat(2));
    let mut total: i64 = 0;
    for i in 0..m {
        let a = alpha.get(i).copied().unwrap_or(0) as i64;
        total += a;
        num = num.mul(&gamma_half(a + 1).expect("positive argument"));
    }
    let den = gamma_half(total + m as i64).expect("positive argument");
    num.div(&den).expect("gamma values are nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::ratio;

    fn ev(c: Rational, pi: i64, l: i64) -> ExactValue {
        ExactValue::new(c, pi, rat(l))
    }

    #[test]
    fn gamma_small_values() {
        // Gamma(1/2) = sqrt(pi)
        assert_eq!(gamma_half(1).unwrap(), ev(rat(1), 1, 0));
        // Gamma(3) = 2! = 2
        assert_eq!(gamma_half(6).unwrap(), ev(rat(2), 0, 0));
        // Gamma(5/2) = 3/4 sqrt(pi)
        assert_eq!(gamma_half(5).unwrap(), ev(ratio(3, 4), 1, 0));
        assert!(gamma_half(0).is_err());
        assert!(gamma_half(-3).is_err());
    }

    #[test]
    fn gamma_recurrence() {
        // Gamma(a+1) = a Gamma(a) for a = 1/2 .. 9/2
        for twice in 1..=9i64 {
            let lhs = gamma_half(twice + 2).unwrap();
            let rhs = gamma_half(twice)
                .unwrap()
                .scale(&Rational::new(twice.into(), 2.into()));
            assert_eq!(lhs, rhs, "recurrence at a = {twice}/2");
        }
    }

    #[test]
    fn reciprocal_gamma() {
        assert_eq!(rgamma_half(2), ExactValue::one());
        assert_eq!(rgamma_half(0), ExactValue::zero());
        assert_eq!(rgamma_half(-4), ExactValue::zero());
        // 1/Gamma(-1/2) = 1/(-2 sqrt(pi)) = -1/2 * pi^(-1/2)
        assert_eq!(rgamma_half(-1), ExactValue::new(ratio(-1, 2), -1, rat(0)));
        // 1/Gamma(-3/2): Gamma(-3/2) = 4/3 sqrt(pi)
        assert_eq!(rgamma_half(-3), ExactValue::new(ratio(3, 4), -1, rat(0)));
        // consistency with gamma_half on positive arguments
        for twice in 1..=9i64 {
            let prod = gamma_half(twice).unwrap().mul(&rgamma_half(twice));
            assert_eq!(prod, ExactValue::one());
        }
    }

    #[test]
    fn sphere_monomials() {
        // circumference of S^1
        assert_eq!(sphere_monomial_integral(&[0, 0], 2), ev(rat(2), 2, 0));
        // area of S^2
        assert_eq!(sphere_monomial_integral(&[0, 0, 0], 3), ev(rat(4), 2, 0));
        // second moment on S^2: (1/3) * 4pi
        assert_eq!(
            sphere_monomial_integral(&[2, 0, 0], 3),
            ev(ratio(4, 3), 2, 0)
        );
        // odd exponent kills the integral
        assert_eq!(sphere_monomial_integral(&[1, 2], 2), ExactValue::zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(ev(rat(-4), 2, 0).to_string(), "-4 * pi");
        assert_eq!(ev(rat(-4), 2, 1).to_string(), "-4 * pi * L");
        assert_eq!(ev(ratio(-8, 3), 2, 3).to_string(), "-8/3 * pi * L^3");
        assert_eq!(ev(rat(1), 1, 0).to_string(), "pi^(1/2)");
        assert_eq!(ExactValue::zero().to_string(), "0");
        assert_eq!(ev(rat(2), 0, -1).to_string(), "2 * L^(-1)");
        assert_eq!(ev(rat(-1), 0, 2).to_string(), "-L^2");
        assert_eq!(ev(rat(7), 0, 0).to_string(), "7");
    }

    #[test]
    fn serialization() {
        let v = ev(ratio(-8, 3), 2, 3);
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"coeff": "-8/3", "pi_pow_x2": 2, "L_pow": "3"})
        );
    }

    #[test]
    fn partial_addition() {
        let a = ev(rat(2), 2, 1);
        let b = ev(rat(3), 2, 1);
        assert_eq!(a.checked_add(&b).unwrap(), ev(rat(5), 2, 1));
        assert_eq!(a.checked_add(&ExactValue::zero()).unwrap(), a.clone());
        assert!(a.checked_add(&ev(rat(1), 0, 1)).is_err());
        // exact cancellation gives canonical zero
        assert_eq!(a.checked_sub(&a).unwrap(), ExactValue::zero());
    }

    #[test]
    fn poly_accumulator() {
        let mut p = PiLPoly::zero();
        p.add_value(&ev(rat(2), 2, 1));
        p.add_value(&ev(rat(-2), 2, 1));
        assert!(p.is_zero());
        p.add_value(&ev(rat(1), 2, 3));
        assert_eq!(p.clone().into_exact().unwrap(), ev(rat(1), 2, 3));
        p.add_value(&ev(rat(1), 0, 0));
        assert!(p.clone().into_exact().is_err());
        // formal radial integration
        let q = PiLPoly::from_value(&ev(rat(2), 0, -2))
            .radial_antiderive()
            .unwrap();
        assert_eq!(q.into_exact().unwrap(), ev(rat(-2), 0, -1));
    }
}
