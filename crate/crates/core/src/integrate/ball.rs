//! Superball integration with either retraction.
//!
//! With the spherical retraction the ball integral is the formal radial
//! antiderivative of the supersphere density (Cavalieri); with the standard
//! retraction it is `(-1)^{s(m,2n)} 2^n` times the classical ball integral
//! of the top Grassmann coefficient. The radial step `int_0^L R^p dR =
//! L^{p+1}/(p+1)` is applied formally, which is what extends the volume
//! formulas to negative superdimension; a `p = -1` term is an error.

use crate::grassmann::{SpaceDims, SuperFun};
use crate::scalar::{
    as_i64_rational, rat, sphere_monomial_integral, ExactValue, PiLPoly, RadialCoeff, ScalarError,
};

use super::sphere::sphere_pil;
use super::{IntegrateError, RetractionTag};

/// Classical integral of a radial-ring element over the ball of symbolic
/// radius `L`: per term, `c x^alpha r^e` integrates to
/// `c * L^{|alpha|+e+m} / (|alpha|+e+m) * int_{S^{m-1}} omega^alpha`.
fn classical_ball_pil(f: &RadialCoeff, m: usize) -> Result<PiLPoly, IntegrateError> {
    let mut acc = PiLPoly::zero();
    for (key, c) in f.terms() {
        if key.k > 0 {
            return Err(IntegrateError::LogUnderIntegral);
        }
        let e = as_i64_rational(&key.e)
            .ok_or_else(|| IntegrateError::FractionalExponent(key.e.to_string()))?;
        let angular = sphere_monomial_integral(&key.alpha, m);
        if angular.is_zero() {
            continue;
        }
        let p = key.alpha.iter().map(|a| *a as i64).sum::<i64>() + e + m as i64;
        if p == 0 {
            return Err(IntegrateError::Scalar(ScalarError::LogarithmicIntegral(
                format!("{c} * r^{}", e - 1),
            )));
        }
        let radial = ExactValue::new(c / rat(p), 0, rat(p));
        acc.add_value(&angular.mul(&radial));
    }
    Ok(acc)
}

/// The superball integral of `f` as a polynomial in `L`.
pub fn ball_pil(
    f: &SuperFun<RadialCoeff>,
    retraction: RetractionTag,
) -> Result<PiLPoly, IntegrateError> {
    let dims = f.dims();
    match retraction {
        RetractionTag::Gamma => Ok(sphere_pil(f)?.radial_antiderive()?),
        RetractionTag::Std => {
            let top = f.berezin_theta();
            let two_n = rat(2i64.pow(dims.n as u32));
            Ok(classical_ball_pil(&top, dims.m)?.scale(&two_n))
        }
    }
}

/// The superball integral of `f`, collapsed to one exact value.
pub fn ball_integral(
    f: &SuperFun<RadialCoeff>,
    retraction: RetractionTag,
) -> Result<ExactValue, IntegrateError> {
    Ok(ball_pil(f, retraction)?.into_exact()?)
}

/// Closed-form superball volume
/// `(-1)^{s(m,2n)} 2^n pi^{m/2} / Gamma(M/2 + 1) * L^M`, zero for
/// non-positive even superdimension.
pub fn ball_volume(dims: SpaceDims) -> ExactValue {
    let m_super = dims.superdim();
    if m_super <= 0 && m_super % 2 == 0 {
        return ExactValue::zero();
    }
    let mut c = rat(2i64.pow(dims.n as u32));
    if crate::grassmann::berezin_sign(dims.n) < 0 {
        c = -c;
    }
    ExactValue::new(c, dims.m as i64, rat(m_super)).mul(&crate::scalar::rgamma_half(m_super + 2))
}
