//! Vector fields under the component convention `X = d/dx^k * X^k`, so that
//! `X(x^j) = (-1)^{|x^j||X^j|} X^j`. All graded signs in the geometry module
//! derive from this single convention.

use crate::grassmann::{CoeffDerive, CoeffRing, GrassmannError, Parity, SpaceDims, SuperFun};
use crate::scalar::{RadialCoeff, RadialFrac, Rational};

/// A vector field with components `X^1 .. X^{m+2n}` in `(x, theta)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField<C: CoeffRing = RadialCoeff> {
    dims: SpaceDims,
    comps: Vec<SuperFun<C>>,
}

impl<C: CoeffRing> VectorField<C> {
    pub fn zero(dims: SpaceDims) -> Self {
        VectorField {
            dims,
            comps: vec![SuperFun::zero(dims); dims.total()],
        }
    }

    pub fn from_components(
        dims: SpaceDims,
        comps: Vec<SuperFun<C>>,
    ) -> Result<Self, GrassmannError> {
        if comps.len() != dims.total() {
            return Err(GrassmannError::DimMismatch(
                dims.m,
                dims.n,
                comps.len(),
                usize::MAX,
            ));
        }
        for c in &comps {
            if c.dims() != dims {
                return Err(GrassmannError::DimMismatch(
                    dims.m,
                    dims.n,
                    c.dims().m,
                    c.dims().n,
                ));
            }
        }
        Ok(VectorField { dims, comps })
    }

    /// The coordinate field `d/dx^k` (component `1` in slot `k`, one-based).
    pub fn coordinate(dims: SpaceDims, k: usize) -> Self {
        let mut v = Self::zero(dims);
        v.comps[k - 1] = SuperFun::one(dims);
        v
    }

    pub fn dims(&self) -> SpaceDims {
        self.dims
    }

    /// Component `X^k`, one-based coordinate index.
    pub fn component(&self, k: usize) -> &SuperFun<C> {
        &self.comps[k - 1]
    }

    pub fn set_component(&mut self, k: usize, f: SuperFun<C>) {
        self.comps[k - 1] = f;
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &SuperFun<C>)> {
        self.comps.iter().enumerate().map(|(i, c)| (i + 1, c))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, GrassmannError> {
        let mut comps = Vec::with_capacity(self.comps.len());
        for (a, b) in self.comps.iter().zip(&rhs.comps) {
            comps.push(a.add(b)?);
        }
        Self::from_components(self.dims, comps)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, GrassmannError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        VectorField {
            dims: self.dims,
            comps: self.comps.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField {
            dims: self.dims,
            comps: self.comps.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Left multiplication by a superfunction:
    /// `a * (d_k * X^k) = d_k * (-1)^{|a||x^k|} a X^k`.
    pub fn scale_left(&self, a: &SuperFun<C>) -> Result<Self, GrassmannError> {
        let mut comps = Vec::with_capacity(self.comps.len());
        for (k, x) in self.components() {
            let moved = a.koszul_past(self.dims.coord_parity(k));
            comps.push(moved.mul(x)?);
        }
        Self::from_components(self.dims, comps)
    }

    /// Parity of the field when homogeneous: `|X^k| + |x^k|`, uniform in `k`.
    pub fn parity(&self) -> Option<Parity> {
        let mut parity = None;
        for (k, comp) in self.components() {
            if comp.is_zero() {
                continue;
            }
            let cp = comp.parity()?;
            let p = if self.dims.coord_parity(k).is_odd() {
                cp.flip()
            } else {
                cp
            };
            match parity {
                None => parity = Some(p),
                Some(q) if q == p => {}
                _ => return None,
            }
        }
        parity
    }

    /// Split into parity-homogeneous (even, odd) fields.
    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = Self::zero(self.dims);
        let mut odd = Self::zero(self.dims);
        for (k, comp) in self.components() {
            let (ce, co) = comp.split_parity();
            // field parity = component parity + coordinate parity
            if self.dims.coord_parity(k).is_odd() {
                even.comps[k - 1] = co;
                odd.comps[k - 1] = ce;
            } else {
                even.comps[k - 1] = ce;
                odd.comps[k - 1] = co;
            }
        }
        (even, odd)
    }

    pub fn map_coeffs<D: CoeffRing>(&self, f: impl Fn(&C) -> D) -> VectorField<D> {
        VectorField {
            dims: self.dims,
            comps: self.comps.iter().map(|c| c.map_coeffs(&f)).collect(),
        }
    }
}

impl<C: CoeffDerive> VectorField<C> {
    /// The derivation `X(f) = sum_k (-1)^{|X^k||x^k|} X^k d_k(f)`.
    pub fn apply(&self, f: &SuperFun<C>) -> Result<SuperFun<C>, GrassmannError> {
        let mut acc = SuperFun::zero(self.dims);
        for (k, comp) in self.components() {
            if comp.is_zero() {
                continue;
            }
            let df = f.coord_derive(k)?;
            let moved = comp.koszul_past(self.dims.coord_parity(k));
            acc = acc.add(&moved.mul(&df)?)?;
        }
        Ok(acc)
    }
}

impl VectorField<RadialCoeff> {
    pub fn to_frac(&self) -> VectorField<RadialFrac> {
        self.map_coeffs(|c| RadialFrac::from_radial(c.clone()))
    }
}

impl VectorField<RadialFrac> {
    /// Back to plain radial coefficients when all denominators are constant.
    pub fn try_to_radial(&self) -> Option<VectorField<RadialCoeff>> {
        let mut comps = Vec::with_capacity(self.comps.len());
        for c in &self.comps {
            let mut out = SuperFun::zero(self.dims);
            for (index, coeff) in c.components() {
                out = out
                    .add(&SuperFun::from_component(
                        self.dims,
                        index,
                        coeff.as_radial()?,
                    ))
                    .ok()?;
            }
            comps.push(out);
        }
        Some(VectorField {
            dims: self.dims,
            comps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn dims(m: usize, n: usize) -> SpaceDims {
        SpaceDims::new(m, n).unwrap()
    }

    #[test]
    fn component_convention() {
        // X(x^j) = (-1)^{|x^j||X^j|} X^j
        let d = dims(2, 1);
        let th1 = SuperFun::<RadialCoeff>::theta(d, 1).unwrap();
        let x1 = SuperFun::x(d, 1).unwrap();

        // even coordinate, any component: X(x^1) = X^1
        let mut x = VectorField::zero(d);
        x.set_component(1, th1.clone());
        assert_eq!(x.apply(&x1).unwrap(), th1);

        // odd coordinate, odd component: X(theta^1) = -X^{theta^1}
        let mut y = VectorField::zero(d);
        y.set_component(d.m + 1, th1.clone());
        assert_eq!(y.apply(&th1).unwrap(), th1.neg());

        // odd coordinate, even component: X(theta^1) = +X^{theta^1}
        let mut z = VectorField::zero(d);
        z.set_component(d.m + 1, SuperFun::one(d));
        assert_eq!(z.apply(&th1).unwrap(), SuperFun::one(d));
    }

    #[test]
    fn parity_of_fields() {
        let d = dims(2, 1);
        let mut x = VectorField::zero(d);
        x.set_component(1, SuperFun::x(d, 1).unwrap());
        assert_eq!(x.parity(), Some(Parity::Even));
        let mut y = VectorField::zero(d);
        y.set_component(d.m + 1, SuperFun::one(d));
        assert_eq!(y.parity(), Some(Parity::Odd));
        let mixed = x.add(&y).unwrap();
        assert_eq!(mixed.parity(), None);
        let (even, odd) = mixed.split_parity();
        assert_eq!(even, x);
        assert_eq!(odd, y);
    }

    #[test]
    fn left_scaling_moves_koszul_signs() {
        let d = dims(2, 1);
        let th1 = SuperFun::<RadialCoeff>::theta(d, 1).unwrap();
        let e_odd = VectorField::coordinate(d, d.m + 2);
        let scaled = e_odd.scale_left(&th1).unwrap();
        // theta^1 * d_{theta^2} = d_{theta^2} * (-theta^1)
        assert_eq!(*scaled.component(d.m + 2), th1.neg());
        // even slot: no sign
        let e_even = VectorField::coordinate(d, 1);
        let scaled = e_even.scale_left(&th1).unwrap();
        assert_eq!(*scaled.component(1), th1);
        // scaling by the constant never introduces signs
        let c = SuperFun::constant(d, rat(3));
        assert_eq!(*e_odd.scale_left(&c).unwrap().component(d.m + 2), c);
    }
}
