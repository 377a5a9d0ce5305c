//! Coefficients on the unit sphere: polynomials in the angular variables
//! `omega^1 .. omega^m` whose coefficients are exact `pi^{k/2} L^q` sums.
//!
//! All radial dependence of a pulled-back superfunction is resolved into the
//! symbolic boundary radius `L`, so these cells are what remains before the
//! angular monomial integrals are applied.

use std::collections::BTreeMap;
use std::fmt;

use crate::grassmann::CoeffRing;
use crate::scalar::{rat, ExactValue, PiLPoly, Rational};

/// A finite sum `sum_alpha omega^alpha * p_alpha(pi, L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngularCoeff {
    m: usize,
    terms: BTreeMap<Vec<u32>, PiLPoly>,
}

impl AngularCoeff {
    pub fn new(m: usize) -> Self {
        AngularCoeff {
            m,
            terms: BTreeMap::new(),
        }
    }

    /// `c * L^l_pow` with no angular part.
    pub fn l_power(m: usize, l_pow: Rational, c: &Rational) -> Self {
        let mut p = PiLPoly::zero();
        p.add_term(0, l_pow, c);
        Self::from_pil(m, p)
    }

    pub fn from_pil(m: usize, p: PiLPoly) -> Self {
        let mut out = Self::new(m);
        out.insert(vec![0; m], p);
        out
    }

    /// `omega^alpha * p`.
    pub fn monomial(m: usize, alpha: Vec<u32>, p: PiLPoly) -> Self {
        assert_eq!(alpha.len(), m);
        let mut out = Self::new(m);
        out.insert(alpha, p);
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &PiLPoly)> {
        self.terms.iter()
    }

    fn insert(&mut self, alpha: Vec<u32>, p: PiLPoly) {
        if !p.is_zero() {
            self.terms.insert(alpha, p);
        }
    }

    fn accumulate(&mut self, alpha: &[u32], p: &PiLPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(alpha) {
            Some(slot) => {
                slot.add(p);
                if slot.is_zero() {
                    self.terms.remove(alpha);
                }
            }
            None => {
                self.terms.insert(alpha.to_vec(), p.clone());
            }
        }
    }

    /// d/dL applied to every cell.
    pub fn derive_l(&self) -> Self {
        let mut out = Self::new(self.m);
        for (alpha, p) in &self.terms {
            out.insert(alpha.clone(), p.derive_l());
        }
        out
    }
}

impl CoeffRing for AngularCoeff {
    fn zero(m: usize) -> Self {
        Self::new(m)
    }

    fn one(m: usize) -> Self {
        Self::l_power(m, Rational::from_integer(0.into()), &rat(1))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (alpha, p) in &rhs.terms {
            out.accumulate(alpha, p);
        }
        out
    }

    fn neg(&self) -> Self {
        AngularCoeff {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(a, p)| (a.clone(), p.neg()))
                .collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::new(self.m);
        for (a1, p1) in &self.terms {
            for (a2, p2) in &rhs.terms {
                let alpha: Vec<u32> = a1.iter().zip(a2).map(|(x, y)| x + y).collect();
                out.accumulate(&alpha, &p1.mul(p2));
            }
        }
        out
    }

    fn scale(&self, c: &Rational) -> Self {
        use num_traits::Zero;
        if c.is_zero() {
            return Self::new(self.m);
        }
        AngularCoeff {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(a, p)| (a.clone(), p.scale(c)))
                .collect(),
        }
    }
}

impl AngularCoeff {
    /// Integrate the angular variables over the unit sphere `S^{m-1}`.
    pub fn integrate_angular(&self) -> PiLPoly {
        let mut acc = PiLPoly::zero();
        for (alpha, p) in &self.terms {
            let weight = crate::scalar::sphere_monomial_integral(alpha, self.m);
            if weight.is_zero() {
                continue;
            }
            acc.add(&p.mul_value(&weight));
        }
        acc
    }

    /// The cell with no angular part, as an exact-value sum.
    pub fn scalar_part(&self) -> PiLPoly {
        self.terms
            .get(&vec![0; self.m])
            .cloned()
            .unwrap_or_default()
    }

    /// Collapse a purely scalar cell into a single exact value.
    pub fn try_into_exact(self) -> Option<ExactValue> {
        if self.terms.keys().any(|alpha| alpha.iter().any(|a| *a != 0)) {
            return None;
        }
        self.scalar_part().into_exact().ok()
    }
}

impl fmt::Display for AngularCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (alpha, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let omega: Vec<String> = alpha
                .iter()
                .enumerate()
                .filter(|(_, a)| **a > 0)
                .map(|(i, a)| {
                    if *a == 1 {
                        format!("w{}", i + 1)
                    } else {
                        format!("w{}^{}", i + 1, a)
                    }
                })
                .collect();
            if omega.is_empty() {
                write!(f, "({p:?})")?;
            } else {
                write!(f, "({p:?})*{}", omega.join("*"))?;
            }
        }
        Ok(())
    }
}
