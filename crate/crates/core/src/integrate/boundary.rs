//! Boundary fluxes through the supersphere and the change-of-retraction
//! boundary term between the standard and spherical retractions.

use crate::geometry::{outer_normal, VectorField};
use crate::grassmann::{CoeffRing, SpaceDims, SuperFun};
use crate::scalar::{factorial, rat, ratio, ExactValue, PiLPoly, RadialCoeff};

use super::ball::ball_pil;
use super::omega::AngularCoeff;
use super::sphere::{angular_berezin, pullback_sphere, weight_density, SphereIntegrand};
use super::{IntegrateError, RetractionTag};

/// The flat-metric pairing `<X, Y>` over plain radial coefficients:
/// `sum_{k,l} (-1)^{|X^k||x^l|} g_{kl} X^k Y^l` with the constant flat
/// metric entries.
pub fn flat_pairing(
    x: &VectorField<RadialCoeff>,
    y: &VectorField<RadialCoeff>,
) -> Result<SuperFun<RadialCoeff>, IntegrateError> {
    let dims = x.dims();
    let entry = |k: usize, l: usize| -> Option<crate::scalar::Rational> {
        if k <= dims.m || l <= dims.m {
            return (k == l).then(|| rat(1));
        }
        let (a, b) = (k - dims.m, l - dims.m);
        if a % 2 == 1 && b == a + 1 {
            Some(ratio(1, 2))
        } else if a % 2 == 0 && b == a - 1 {
            Some(ratio(-1, 2))
        } else {
            None
        }
    };
    let mut acc = SuperFun::zero(dims);
    for (k, xk) in x.components() {
        if xk.is_zero() {
            continue;
        }
        for (l, yl) in y.components() {
            if yl.is_zero() {
                continue;
            }
            let Some(g_kl) = entry(k, l) else { continue };
            let moved = xk.koszul_past(dims.coord_parity(l));
            acc = acc.add(&moved.mul(yl)?.scale(&g_kl))?;
        }
    }
    Ok(acc)
}

/// The boundary flux `S eps(nu) int dsvol i_L^*(<X, nu>)` of a polynomial
/// field through the supersphere; `S = eps(nu) = 1` under the sign
/// conventions in force.
pub fn boundary_flux(x: &VectorField<RadialCoeff>) -> Result<ExactValue, IntegrateError> {
    Ok(boundary_flux_pil(x)?.into_exact()?)
}

/// The boundary flux as a polynomial in `L`.
pub fn boundary_flux_pil(x: &VectorField<RadialCoeff>) -> Result<PiLPoly, IntegrateError> {
    let dims = x.dims();
    let nu = outer_normal(dims)?;
    let integrand = flat_pairing(x, &nu)?;
    super::sphere::sphere_pil(&integrand)
}

/// Boundary term by subtraction:
/// `int_{(B_L, std)} dsvol f - int_{(B_L, gamma)} dsvol f`.
pub fn boundary_term(f: &SuperFun<RadialCoeff>) -> Result<ExactValue, IntegrateError> {
    Ok(boundary_term_pil(f)?.into_exact()?)
}

/// Boundary term by subtraction, as a polynomial in `L`.
pub fn boundary_term_pil(f: &SuperFun<RadialCoeff>) -> Result<PiLPoly, IntegrateError> {
    let mut std = ball_pil(f, RetractionTag::Std)?;
    std.add(&ball_pil(f, RetractionTag::Gamma)?.neg());
    Ok(std)
}

/// `phi^*(r) - R = sqrt(R^2 - theta^2) - R`, the nilpotent retraction
/// difference in boundary coordinates (the symbolic radius plays `R`).
fn retraction_difference(dims: SpaceDims) -> SphereIntegrand {
    let r_pulled = pullback_sphere(&SuperFun::from_coeff(
        dims,
        RadialCoeff::r_power(dims.m, rat(1)),
    ))
    .expect("r has integer exponent");
    let symbol = SphereIntegrand::from_coeff(dims, AngularCoeff::l_power(dims.m, rat(1), &rat(1)));
    r_pulled.sub(&symbol).expect("same dims")
}

/// The boundary term by the displayed sum
/// `b = -S sum_{j=1}^n 1/j! int (((r - R)^j omega).d_tau^{j-1})|_{R=L}`,
/// with the natural action `([dx] h).d^k = [dx] (-1)^k d^k h` and the
/// boundary coordinate derivative realised as `d/dL` on the symbolic
/// radius, plus the inner-endpoint term of `inner_endpoint_term`.
pub fn boundary_term_direct(f: &SuperFun<RadialCoeff>) -> Result<ExactValue, IntegrateError> {
    Ok(boundary_term_direct_pil(f)?.into_exact()?)
}

/// The direct boundary-term sum as a polynomial in `L`.
pub fn boundary_term_direct_pil(f: &SuperFun<RadialCoeff>) -> Result<PiLPoly, IntegrateError> {
    let dims = f.dims();
    if dims.n == 0 {
        return Ok(PiLPoly::zero());
    }
    let pulled = pullback_sphere(f)?;
    let weight = weight_density(dims);
    let delta = retraction_difference(dims);
    let mut delta_pow = SphereIntegrand::one(dims);
    let mut acc = PiLPoly::zero();
    for j in 1..=dims.n as u32 {
        delta_pow = delta_pow.mul(&delta)?;
        if delta_pow.is_zero() {
            break;
        }
        let mut density = weight.mul(&pulled)?.mul(&delta_pow)?;
        for _ in 1..j {
            density = density.map_coeffs(|c| c.derive_l());
        }
        // (-1)^{j-1} from the operator action, 1/j! from the sum
        let mut c = factorial(j).recip();
        if (j - 1) % 2 == 1 {
            c = -c;
        }
        acc.add(&angular_berezin(&density).scale(&c));
    }
    // overall -S with S = +1
    acc = acc.neg();
    acc.add(&inner_endpoint_term(f)?);
    Ok(acc)
}

/// Inner-endpoint contribution to the change-of-retraction term.
///
/// The displayed sum expands the outer boundary only; it equals the
/// difference of ball integrals for compactly supported forms. Polynomial
/// forms are not compactly supported, and the formal radial antiderivative
/// behind the ball integral drops its value at `R = 0`, where the
/// substituted antiderivative `F(sqrt(R^2 - theta^2))` keeps the `R^0`
/// coefficient `(-1)^q theta^{2q} / (p+1)` from every radial profile term
/// `r^p` with `p + 1 = 2q`. This restores exactly that coefficient.
fn inner_endpoint_term(f: &SuperFun<RadialCoeff>) -> Result<PiLPoly, IntegrateError> {
    let dims = f.dims();
    let powers = super::sphere::theta_sq_powers(dims);
    let two_n = rat(2i64.pow(dims.n as u32));
    let mut obj = SphereIntegrand::zero(dims);
    for (index, coeff) in f.components() {
        for (key, c) in coeff.terms() {
            if key.k > 0 {
                return Err(IntegrateError::LogUnderIntegral);
            }
            let e = crate::scalar::as_i64_rational(&key.e)
                .ok_or_else(|| IntegrateError::FractionalExponent(key.e.to_string()))?;
            let p = dims.m as i64 - 1 + key.alpha.iter().map(|a| *a as i64).sum::<i64>() + e;
            if p < 0 || (p + 1) % 2 != 0 {
                continue;
            }
            let q = ((p + 1) / 2) as usize;
            if q > dims.n {
                continue;
            }
            let mut factor = &two_n * c / rat(p + 1);
            if q % 2 == 1 {
                factor = -factor;
            }
            let cell = AngularCoeff::monomial(dims.m, key.alpha.clone(), {
                let mut pil = PiLPoly::zero();
                pil.add_term(0, rat(0), &factor);
                pil
            });
            let term = powers[q]
                .scale_coeff(&cell)
                .mul(&SphereIntegrand::from_component(
                    dims,
                    index,
                    AngularCoeff::one(dims.m),
                ))?;
            obj = obj.add(&term)?;
        }
    }
    Ok(angular_berezin(&obj))
}
