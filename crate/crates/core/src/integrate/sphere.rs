//! Supersphere integration with respect to the spherical retraction:
//! `2^n int d^{2n}theta int dOmega L (L^2 - theta^2)^{(m-2)/2} i_L^*(f)`.
//!
//! A superfunction is pulled back to the sphere by the substitution
//! `x^j -> omega^j s`, `r^e -> s^e` with `s = sqrt(L^2 - theta^2)`; every
//! integer power of `s` expands exactly by the nilpotent binomial series.

use crate::grassmann::{berezin_sign, CoeffRing, MultiIndex, SpaceDims, SuperFun};
use crate::scalar::{
    as_i64_rational, binom, rat, ratio, rgamma_half, ExactValue, PiLPoly, RadialCoeff, Rational,
};

use super::omega::AngularCoeff;
use super::IntegrateError;

/// A superfunction pulled back to the supersphere: Grassmann components
/// with angular-polynomial coefficients carrying symbolic `L` powers.
pub type SphereIntegrand = SuperFun<AngularCoeff>;

/// `theta^2` with angular coefficients.
fn theta_sq_omega(dims: SpaceDims) -> SphereIntegrand {
    let mut f = SphereIntegrand::zero(dims);
    for l in 1..=dims.n {
        let pair =
            MultiIndex::from_indices([2 * l - 1, 2 * l], dims.odd()).expect("indices in range");
        f = f
            .add(&SphereIntegrand::from_component(
                dims,
                pair,
                AngularCoeff::l_power(dims.m, rat(0), &rat(-1)),
            ))
            .expect("same dims");
    }
    f
}

/// Powers `(theta^2)^0 .. (theta^2)^n`.
pub(crate) fn theta_sq_powers(dims: SpaceDims) -> Vec<SphereIntegrand> {
    let t2 = theta_sq_omega(dims);
    let mut out = Vec::with_capacity(dims.n + 1);
    out.push(SphereIntegrand::one(dims));
    for k in 1..=dims.n {
        let next = out[k - 1].mul(&t2).expect("same dims");
        out.push(next);
    }
    out
}

/// `s^d = (L^2 - theta^2)^{d/2}
///      = sum_k binom(d/2, k) (-1)^k L^{d-2k} (theta^2)^k`.
fn s_power(dims: SpaceDims, d: i64, powers: &[SphereIntegrand]) -> SphereIntegrand {
    let half_d = ratio(d, 2);
    let mut acc = SphereIntegrand::zero(dims);
    for (k, t2k) in powers.iter().enumerate() {
        let mut c = binom(&half_d, k as u32);
        if k % 2 == 1 {
            c = -c;
        }
        if num_traits::Zero::is_zero(&c) {
            continue;
        }
        let factor = AngularCoeff::l_power(dims.m, rat(d - 2 * k as i64), &c);
        acc = acc.add(&t2k.scale_coeff(&factor)).expect("same dims");
    }
    acc
}

/// Pull a superfunction back to the supersphere of symbolic radius `L`.
///
/// Requires integer radial exponents and no logarithms.
pub fn pullback_sphere(f: &SuperFun<RadialCoeff>) -> Result<SphereIntegrand, IntegrateError> {
    let dims = f.dims();
    let powers = theta_sq_powers(dims);
    let mut acc = SphereIntegrand::zero(dims);
    for (index, coeff) in f.components() {
        for (key, c) in coeff.terms() {
            if key.k > 0 {
                return Err(IntegrateError::LogUnderIntegral);
            }
            let e = as_i64_rational(&key.e)
                .ok_or_else(|| IntegrateError::FractionalExponent(key.e.to_string()))?;
            let total: i64 = key.alpha.iter().map(|a| *a as i64).sum::<i64>() + e;
            let radial = s_power(dims, total, &powers);
            let angular = AngularCoeff::monomial(dims.m, key.alpha.clone(), single_term(c.clone()));
            let term = radial
                .scale_coeff(&angular)
                .mul(&SphereIntegrand::from_component(
                    dims,
                    index,
                    AngularCoeff::one(dims.m),
                ))?;
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

fn single_term(c: Rational) -> PiLPoly {
    let mut p = PiLPoly::zero();
    p.add_term(0, rat(0), &c);
    p
}

/// The transformed volume density `2^n L (L^2 - theta^2)^{(m-2)/2}`.
pub fn weight_density(dims: SpaceDims) -> SphereIntegrand {
    let powers = theta_sq_powers(dims);
    let two_n = rat(2i64.pow(dims.n as u32));
    s_power(dims, dims.m as i64 - 2, &powers).scale_coeff(&AngularCoeff::l_power(
        dims.m,
        rat(1),
        &two_n,
    ))
}

/// Berezin integral over theta followed by the angular monomial integrals.
pub fn angular_berezin(p: &SphereIntegrand) -> PiLPoly {
    p.berezin_theta().integrate_angular()
}

/// The supersphere integral of `f` as a polynomial in `L`.
pub fn sphere_pil(f: &SuperFun<RadialCoeff>) -> Result<PiLPoly, IntegrateError> {
    let dims = f.dims();
    let pulled = pullback_sphere(f)?;
    let weighted = weight_density(dims).mul(&pulled)?;
    Ok(angular_berezin(&weighted))
}

/// The supersphere integral of `f`, collapsed to one exact value.
pub fn sphere_integral(f: &SuperFun<RadialCoeff>) -> Result<ExactValue, IntegrateError> {
    Ok(sphere_pil(f)?.into_exact()?)
}

/// Closed-form supersphere area
/// `(-1)^{s(m,2n)} 2^{n+1} pi^{m/2} / Gamma(M/2) * L^{M-1}`, read as zero for
/// non-positive even superdimension `M`.
pub fn sphere_volume(dims: SpaceDims) -> ExactValue {
    let m_super = dims.superdim();
    if m_super <= 0 && m_super % 2 == 0 {
        return ExactValue::zero();
    }
    let mut c = rat(2i64.pow(dims.n as u32 + 1));
    if berezin_sign(dims.n) < 0 {
        c = -c;
    }
    ExactValue::new(c, dims.m as i64, rat(m_super - 1)).mul(&rgamma_half(m_super))
}
