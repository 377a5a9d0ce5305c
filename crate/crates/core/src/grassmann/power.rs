//! Nilpotent Taylor composition: exact powers, square roots and logarithms
//! of even superfunctions whose bottom part is a radial power, and the
//! superradius machinery built from them.

use crate::scalar::{rat, rational_pow, RadialCoeff, Rational, ScalarError};

use num_traits::{One, Signed, Zero};

use super::{GrassmannError, MultiIndex, SpaceDims, SuperFun};

/// The scalar function composed with an even superfunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarMap {
    /// `y -> y^a` with rational exponent.
    Power(Rational),
    /// `y -> log y`.
    Log,
}

fn check_nilpotent_even(nil: &SuperFun) -> Result<(), GrassmannError> {
    for (index, _) in nil.components() {
        if index.len() < 2 || index.len() % 2 != 0 {
            return Err(GrassmannError::NotNilpotentEven);
        }
    }
    Ok(())
}

/// `c * r^e` as a radial power base; rejects anything else.
fn base_power(base: &RadialCoeff) -> Result<(Rational, Rational), GrassmannError> {
    match base.as_radial_power() {
        Some((c, e)) if c.is_positive() => Ok((c, e)),
        _ => Err(GrassmannError::BaseNotRadialPower(base.to_string())),
    }
}

/// Exact Taylor composition `sum_{k=0}^n g^{(k)}(base) nil^k / k!`.
///
/// Exact because `nil^{n+1} = 0`; `base` must be a positive constant or a
/// positive radial power so that its rational powers stay inside the ring.
pub fn taylor_compose(
    g: &ScalarMap,
    base: &RadialCoeff,
    nil: &SuperFun,
) -> Result<SuperFun, GrassmannError> {
    check_nilpotent_even(nil)?;
    let dims = nil.dims();
    let (c, e) = base_power(base)?;
    if matches!(g, ScalarMap::Log) && !c.is_one() {
        return Err(GrassmannError::LogBaseNotUnit(base.to_string()));
    }

    let mut out = SuperFun::zero(dims);
    let mut nil_pow = SuperFun::one(dims);
    let mut k_factorial = Rational::one();
    for k in 0..=dims.n as i64 {
        if k > 0 {
            nil_pow = nil_pow.mul(nil)?;
            k_factorial *= rat(k);
            if nil_pow.is_zero() {
                break;
            }
        }
        let deriv = match g {
            ScalarMap::Power(a) => {
                // g^(k)(y) = a (a-1) .. (a-k+1) y^{a-k}
                let mut factor = Rational::one();
                for i in 0..k {
                    factor *= a - rat(i);
                }
                if factor.is_zero() {
                    continue;
                }
                let exp = a - rat(k);
                let coeff = rational_pow(&c, &exp).map_err(fractional_base)?;
                RadialCoeff::r_power(dims.m, &e * exp).scale(&(factor * coeff))
            }
            ScalarMap::Log => {
                if k == 0 {
                    // log(r^e) = e log r
                    RadialCoeff::log_r(dims.m).scale(&e)
                } else {
                    // g^(k)(y) = (-1)^{k-1} (k-1)! y^{-k}
                    let mut factor = Rational::one();
                    for i in 1..k {
                        factor *= rat(i);
                    }
                    if (k - 1) % 2 == 1 {
                        factor = -factor;
                    }
                    RadialCoeff::r_power(dims.m, &e * rat(-k)).scale(&factor)
                }
            }
        };
        let term = nil_pow.scale_coeff(&deriv).scale(&k_factorial.recip());
        out = out.add(&term)?;
    }
    Ok(out)
}

fn fractional_base(err: ScalarError) -> GrassmannError {
    GrassmannError::Scalar(err)
}

/// Unique positive square root of an even superfunction whose bottom part is
/// a strictly positive radial power or constant; `sqrt_even(f)^2 = f` exactly.
pub fn sqrt_even(f: &SuperFun) -> Result<SuperFun, GrassmannError> {
    match f.parity() {
        Some(super::Parity::Even) => {}
        Some(super::Parity::Odd) => return Err(GrassmannError::OddInput),
        None if f.is_zero() => return Err(GrassmannError::BaseNotRadialPower("0".into())),
        None => return Err(GrassmannError::OddInput),
    }
    let bottom = f.bottom();
    let nil = f.sub(&SuperFun::from_coeff(f.dims(), bottom.clone()))?;
    taylor_compose(&ScalarMap::Power(rat(1) / rat(2)), &bottom, &nil)
}

/// `theta^2 = -sum_{j odd} theta^j theta^{j+1}`, the nilpotent part of `R^2`.
pub fn theta_sq(dims: SpaceDims) -> SuperFun {
    let mut f = SuperFun::zero(dims);
    for l in 1..=dims.n {
        let pair =
            MultiIndex::from_indices([2 * l - 1, 2 * l], dims.odd()).expect("indices in range");
        f = f
            .add(&SuperFun::from_component(
                dims,
                pair,
                RadialCoeff::constant(dims.m, rat(-1)),
            ))
            .expect("same dims");
    }
    f
}

/// The squared superradius `R^2 = r^2 + theta^2`.
pub fn superradius_sq(dims: SpaceDims) -> SuperFun {
    SuperFun::from_coeff(dims, RadialCoeff::r_power(dims.m, rat(2)))
        .add(&theta_sq(dims))
        .expect("same dims")
}

/// `R^a = (r^2 + theta^2)^{a/2}`, exact on the domain `r != 0`.
pub fn superpower_r(dims: SpaceDims, a: Rational) -> Result<SuperFun, GrassmannError> {
    taylor_compose(
        &ScalarMap::Power(a / rat(2)),
        &RadialCoeff::r_power(dims.m, rat(2)),
        &theta_sq(dims),
    )
}

/// `log R = (1/2) log(r^2 + theta^2)`.
pub fn log_superradius(dims: SpaceDims) -> Result<SuperFun, GrassmannError> {
    let full = taylor_compose(
        &ScalarMap::Log,
        &RadialCoeff::r_power(dims.m, rat(2)),
        &theta_sq(dims),
    )?;
    Ok(full.scale(&(rat(1) / rat(2))))
}
