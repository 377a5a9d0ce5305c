//! Superfunctions `f = sum_I theta^I f_I` over a generic even coefficient
//! ring, with the graded product, left odd derivatives and the Berezin
//! theta-integral.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{RadialCoeff, Rational, ScalarError};

use super::{berezin_sign, CoeffDerive, CoeffRing, GrassmannError, MultiIndex, Parity, SpaceDims};

/// A superfunction on `R^{m|2n}` with coefficients in `C`.
///
/// Components with zero coefficient are never stored, so structural equality
/// coincides with equality in the algebra whenever `C` is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperFun<C = RadialCoeff> {
    dims: SpaceDims,
    comps: BTreeMap<MultiIndex, C>,
}

impl<C: CoeffRing> SuperFun<C> {
    pub fn zero(dims: SpaceDims) -> Self {
        SuperFun {
            dims,
            comps: BTreeMap::new(),
        }
    }

    pub fn from_component(dims: SpaceDims, index: MultiIndex, coeff: C) -> Self {
        let mut f = Self::zero(dims);
        f.insert(index, coeff);
        f
    }

    pub fn from_coeff(dims: SpaceDims, coeff: C) -> Self {
        Self::from_component(dims, MultiIndex::EMPTY, coeff)
    }

    pub fn constant(dims: SpaceDims, c: Rational) -> Self {
        Self::from_coeff(dims, C::one(dims.m).scale(&c))
    }

    pub fn one(dims: SpaceDims) -> Self {
        Self::from_coeff(dims, C::one(dims.m))
    }

    /// `theta^j`, one-based.
    pub fn theta(dims: SpaceDims, j: usize) -> Result<Self, GrassmannError> {
        let index = MultiIndex::singleton(j, dims.odd())?;
        Ok(Self::from_component(dims, index, C::one(dims.m)))
    }

    pub fn dims(&self) -> SpaceDims {
        self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (MultiIndex, &C)> {
        self.comps.iter().map(|(i, c)| (*i, c))
    }

    pub fn component(&self, index: MultiIndex) -> Option<&C> {
        self.comps.get(&index)
    }

    /// The `theta^empty` component.
    pub fn bottom(&self) -> C {
        self.comps
            .get(&MultiIndex::EMPTY)
            .cloned()
            .unwrap_or_else(|| C::zero(self.dims.m))
    }

    /// The top component `f_{(1,..,1)}`.
    pub fn top(&self) -> C {
        self.comps
            .get(&MultiIndex::full(self.dims.n))
            .cloned()
            .unwrap_or_else(|| C::zero(self.dims.m))
    }

    fn insert(&mut self, index: MultiIndex, coeff: C) {
        if !coeff.is_zero() {
            self.comps.insert(index, coeff);
        }
    }

    fn accumulate(&mut self, index: MultiIndex, coeff: &C) {
        if coeff.is_zero() {
            return;
        }
        match self.comps.remove(&index) {
            None => {
                self.comps.insert(index, coeff.clone());
            }
            Some(old) => {
                let sum = old.add(coeff);
                self.insert(index, sum);
            }
        }
    }

    fn check_dims(&self, rhs: &Self) -> Result<(), GrassmannError> {
        if self.dims != rhs.dims {
            return Err(GrassmannError::DimMismatch(
                self.dims.m,
                self.dims.n,
                rhs.dims.m,
                rhs.dims.n,
            ));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, GrassmannError> {
        self.check_dims(rhs)?;
        let mut out = self.clone();
        for (index, coeff) in &rhs.comps {
            out.accumulate(*index, coeff);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, GrassmannError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&crate::scalar::rat(-1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dims);
        for (index, coeff) in &self.comps {
            out.insert(*index, coeff.scale(c));
        }
        out
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        let mut out = Self::zero(self.dims);
        for (index, coeff) in &self.comps {
            out.insert(*index, coeff.mul(c));
        }
        out
    }

    /// Graded product. Coefficients are even, so the only signs are the
    /// Koszul signs of merging the two Grassmann indices.
    pub fn mul(&self, rhs: &Self) -> Result<Self, GrassmannError> {
        self.check_dims(rhs)?;
        let mut out = Self::zero(self.dims);
        for (i, a) in &self.comps {
            for (j, b) in &rhs.comps {
                if let Some((merged, sign)) = i.merge(*j) {
                    let mut prod = a.mul(b);
                    if sign < 0 {
                        prod = prod.neg();
                    }
                    out.accumulate(merged, &prod);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<Self, GrassmannError> {
        let mut acc = Self::one(self.dims);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Left derivative with respect to `theta^j`.
    pub fn theta_derive(&self, j: usize) -> Result<Self, GrassmannError> {
        if j == 0 || j > self.dims.odd() {
            return Err(GrassmannError::ThetaIndexOutOfRange {
                j,
                odd: self.dims.odd(),
            });
        }
        let mut out = Self::zero(self.dims);
        for (index, coeff) in &self.comps {
            if let Some((rest, sign)) = index.remove(j) {
                let c = if sign < 0 { coeff.neg() } else { coeff.clone() };
                out.accumulate(rest, &c);
            }
        }
        Ok(out)
    }

    /// Berezin integral over the odd variables:
    /// `(-1)^{n(2n-1)} f_{(1,..,1)}`, equal to the iterated left derivatives
    /// `d/dtheta^1 ... d/dtheta^{2n}` applied to `f`.
    pub fn berezin_theta(&self) -> C {
        let top = self.top();
        if berezin_sign(self.dims.n) < 0 {
            top.neg()
        } else {
            top
        }
    }

    /// Parity, when the superfunction is homogeneous.
    pub fn parity(&self) -> Option<Parity> {
        let mut parity = None;
        for index in self.comps.keys() {
            let p = index.parity();
            match parity {
                None => parity = Some(p),
                Some(q) if q == p => {}
                _ => return None,
            }
        }
        parity
    }

    /// Split into (even, odd) parts.
    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = Self::zero(self.dims);
        let mut odd = Self::zero(self.dims);
        for (index, coeff) in &self.comps {
            if index.parity().is_odd() {
                odd.insert(*index, coeff.clone());
            } else {
                even.insert(*index, coeff.clone());
            }
        }
        (even, odd)
    }

    /// Multiply each homogeneous sector by the Koszul sign of moving it past
    /// a symbol of the given parity: `theta^I f_I -> (-1)^{|I| |p|} theta^I f_I`.
    pub fn koszul_past(&self, p: Parity) -> Self {
        if !p.is_odd() {
            return self.clone();
        }
        let mut out = Self::zero(self.dims);
        for (index, coeff) in &self.comps {
            let c = if index.parity().is_odd() {
                coeff.neg()
            } else {
                coeff.clone()
            };
            out.insert(*index, c);
        }
        out
    }

    /// Map the coefficients into another ring, dropping zeros.
    pub fn map_coeffs<D: CoeffRing>(&self, f: impl Fn(&C) -> D) -> SuperFun<D> {
        let mut out = SuperFun::zero(self.dims);
        for (index, coeff) in &self.comps {
            out.insert(*index, f(coeff));
        }
        out
    }

    /// Sum the images of all components.
    pub fn try_map_sum<T>(
        &self,
        mut f: impl FnMut(MultiIndex, &C) -> Result<T, GrassmannError>,
        mut fold: impl FnMut(T),
    ) -> Result<(), GrassmannError> {
        for (index, coeff) in &self.comps {
            fold(f(*index, coeff)?);
        }
        Ok(())
    }
}

impl<C: CoeffDerive> SuperFun<C> {
    /// Partial derivative along the even coordinate `x^i`.
    pub fn x_derive(&self, i: usize) -> Result<Self, GrassmannError> {
        if i == 0 || i > self.dims.m {
            return Err(GrassmannError::Scalar(ScalarError::AxisOutOfRange {
                axis: i,
                m: self.dims.m,
            }));
        }
        let mut out = Self::zero(self.dims);
        for (index, coeff) in &self.comps {
            out.insert(*index, coeff.x_derive(i)?);
        }
        Ok(out)
    }

    /// Derivative along the one-based combined coordinate index
    /// (`1..=m` even, `m+1..=m+2n` odd).
    pub fn coord_derive(&self, k: usize) -> Result<Self, GrassmannError> {
        if k <= self.dims.m {
            self.x_derive(k)
        } else {
            self.theta_derive(k - self.dims.m)
        }
    }
}

impl SuperFun<RadialCoeff> {
    /// The coordinate function `x^i`.
    pub fn x(dims: SpaceDims, i: usize) -> Result<Self, GrassmannError> {
        Ok(Self::from_coeff(dims, RadialCoeff::coordinate(dims.m, i)?))
    }

    /// Value of the underlying function at the origin (the `theta^empty`
    /// coefficient evaluated at `x = 0`).
    pub fn eval_zero(&self) -> Result<Rational, ScalarError> {
        self.bottom().eval_zero()
    }
}

impl<C: CoeffRing + fmt::Display> fmt::Display for SuperFun<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (index, coeff) in &self.comps {
            let body = coeff.to_string();
            if first {
                write!(f, "{}", render_term(&body, *index, false))?;
                first = false;
            } else {
                write!(f, " {}", render_term(&body, *index, true))?;
            }
        }
        Ok(())
    }
}

fn render_term(coeff: &str, index: MultiIndex, with_sep: bool) -> String {
    let multi = coeff.contains(" + ") || coeff.contains(" - ");
    let (neg, bare) = if !multi {
        match coeff.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, coeff.to_string()),
        }
    } else {
        (false, format!("({coeff})"))
    };
    let body = if index.is_empty() {
        bare
    } else if bare == "1" {
        index.to_string()
    } else {
        format!("{bare}*{index}")
    };
    if with_sep {
        format!("{} {}", if neg { "-" } else { "+" }, body)
    } else {
        format!("{}{}", if neg { "-" } else { "" }, body)
    }
}
