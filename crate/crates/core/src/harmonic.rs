//! Theorem-level verifiers: fundamental solutions, the divergence theorem,
//! Green's formula, both mean value theorems, and conserved quantities.
//!
//! Every verifier compares both sides as exact polynomials in the symbolic
//! radius `L` and reports the collapsed values; `equal` holds exactly when
//! the difference is canonical zero.

mod kernel;

pub use kernel::harmonic_basis;

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{divergence_flat, laplacian_flat, outer_normal, GeometryError, VectorField};
use crate::grassmann::{
    berezin_sign, log_superradius, superpower_r, GrassmannError, SpaceDims, SuperFun,
};
use crate::integrate::{
    ball_pil, ball_volume, boundary_flux_pil, boundary_term, boundary_term_direct, sphere_pil,
    sphere_volume, IntegrateError, RetractionTag,
};
use crate::scalar::{gamma_half, rat, ExactValue, PiLPoly, RadialCoeff, ScalarError};

/// Errors from the verification layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarmonicError {
    #[error("superfunction is not harmonic")]
    NotHarmonic,
    #[error("vector field is not divergence-free")]
    NotDivergenceFree,
    #[error("expected a polynomial superfunction")]
    NotPolynomial,
    #[error(transparent)]
    Integrate(#[from] IntegrateError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Outcome of one theorem check at one `(m, n)` with symbolic radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub m: usize,
    pub n: usize,
    pub lhs: ExactValue,
    pub rhs: ExactValue,
    pub equal: bool,
    pub ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    /// Compare two sides as polynomials in `L`. When a side is a genuine
    /// multi-term polynomial the `lhs`/`rhs` value fields fall back to a
    /// collapsed surrogate preserving `equal <=> lhs - rhs = 0`, and the
    /// full polynomials go into `detail`.
    fn from_pils(
        theorem: &str,
        dims: SpaceDims,
        started: Instant,
        lhs: PiLPoly,
        rhs: PiLPoly,
    ) -> Result<Self, HarmonicError> {
        let equal = lhs == rhs;
        let ms = started.elapsed().as_millis() as u64;
        let (lhs_value, rhs_value, detail) = match (lhs.try_into_exact(), rhs.try_into_exact()) {
            (Some(l), Some(r)) => (l, r, None),
            _ => {
                let detail = Some(format!("lhs = {lhs}; rhs = {rhs}"));
                if equal {
                    (ExactValue::zero(), ExactValue::zero(), detail)
                } else {
                    let mut diff = lhs.clone();
                    diff.add(&rhs.neg());
                    match diff.try_into_exact() {
                        Some(d) => (d, ExactValue::zero(), detail),
                        None => (ExactValue::one(), ExactValue::zero(), detail),
                    }
                }
            }
        };
        Ok(VerificationReport {
            theorem: theorem.to_string(),
            m: dims.m,
            n: dims.n,
            lhs: lhs_value,
            rhs: rhs_value,
            equal,
            ms,
            detail,
        })
    }
}

fn require_harmonic(f: &SuperFun) -> Result<(), HarmonicError> {
    if laplacian_flat(f)?.is_zero() {
        Ok(())
    } else {
        Err(HarmonicError::NotHarmonic)
    }
}

/// `laplace R^{2-M} = 0` for `M != 2`, `laplace log R = 0` for `M = 2`,
/// as a canonical-zero assertion in the coefficient ring.
pub fn check_fundamental_solution(dims: SpaceDims) -> Result<VerificationReport, HarmonicError> {
    let started = Instant::now();
    let m_super = dims.superdim();
    let (theorem, fundamental) = if m_super == 2 {
        ("fundamental_log", log_superradius(dims)?)
    } else {
        ("fundamental_power", superpower_r(dims, rat(2 - m_super))?)
    };
    let residual = laplacian_flat(&fundamental)?;
    let equal = residual.is_zero();
    Ok(VerificationReport {
        theorem: theorem.to_string(),
        m: dims.m,
        n: dims.n,
        lhs: if equal {
            ExactValue::zero()
        } else {
            ExactValue::one()
        },
        rhs: ExactValue::zero(),
        equal,
        ms: started.elapsed().as_millis() as u64,
        detail: (!equal).then(|| format!("laplacian residual: {residual}")),
    })
}

/// Mean value theorem on the supersphere:
/// `int dsvol i_L^*(f) = vol(S^{m-1|2n}_L) f(0)` for harmonic `f`.
pub fn verify_mvt_sphere(f: &SuperFun) -> Result<VerificationReport, HarmonicError> {
    require_harmonic(f)?;
    verify_mvt_sphere_unchecked(f)
}

/// The same identity without the harmonicity gate (negative controls).
pub fn verify_mvt_sphere_unchecked(f: &SuperFun) -> Result<VerificationReport, HarmonicError> {
    let started = Instant::now();
    let dims = f.dims();
    let lhs = sphere_pil(f)?;
    let mut rhs = PiLPoly::zero();
    rhs.add_value(&sphere_volume(dims).scale(&f.eval_zero()?));
    VerificationReport::from_pils("mvt_sphere", dims, started, lhs, rhs)
}

/// Mean value theorem on the superball, both displayed identities:
/// the spherical retraction against `vol(B^{m|2n}_L) f(0)` and the standard
/// retraction against `(-1)^{s} 2^n vol(B^m_L) f^{top}(0)`.
pub fn verify_mvt_ball(f: &SuperFun) -> Result<[VerificationReport; 2], HarmonicError> {
    require_harmonic(f)?;
    verify_mvt_ball_unchecked(f)
}

/// The same identities without the harmonicity gate.
pub fn verify_mvt_ball_unchecked(f: &SuperFun) -> Result<[VerificationReport; 2], HarmonicError> {
    let dims = f.dims();

    let started = Instant::now();
    let lhs = ball_pil(f, RetractionTag::Gamma)?;
    let mut rhs = PiLPoly::zero();
    rhs.add_value(&ball_volume(dims).scale(&f.eval_zero()?));
    let gamma = VerificationReport::from_pils("mvt_ball_gamma", dims, started, lhs, rhs)?;

    let started = Instant::now();
    let lhs = ball_pil(f, RetractionTag::Std)?;
    let mut rhs = PiLPoly::zero();
    rhs.add_value(&classical_ball_times_top(f)?);
    let std = VerificationReport::from_pils("mvt_ball_std", dims, started, lhs, rhs)?;

    Ok([gamma, std])
}

/// `(-1)^{s(m,2n)} 2^n vol(B^m_L) f^{(1,..,1)}(0)`.
fn classical_ball_times_top(f: &SuperFun) -> Result<ExactValue, HarmonicError> {
    let dims = f.dims();
    let top_at_zero = f.top().eval_zero()?;
    let mut c = rat(2i64.pow(dims.n as u32)) * top_at_zero;
    if berezin_sign(dims.n) < 0 {
        c = -c;
    }
    // vol(B^m_L) = pi^{m/2} / Gamma(m/2 + 1) L^m
    let vol = ExactValue::new(rat(1), dims.m as i64, rat(dims.m as i64))
        .div(&gamma_half(dims.m as i64 + 2)?)?;
    Ok(vol.scale(&c))
}

/// Green's formula: `int dsvol (f lap k - (-1)^{|f||k|} k lap f)` equals
/// `-S int dsvol i_L^*(f nu(k) - (-1)^{|f||k|} k nu(f))` over the superball
/// and supersphere, for parity-homogeneous polynomial `f`, `k`.
pub fn verify_green(f: &SuperFun, k: &SuperFun) -> Result<VerificationReport, HarmonicError> {
    let started = Instant::now();
    let dims = f.dims();
    let sign = match (f.parity(), k.parity()) {
        (Some(pf), Some(pk)) => pf.koszul(pk),
        _ => return Err(HarmonicError::Geometry(GeometryError::MixedParity)),
    };
    let signed = |x: SuperFun| if sign < 0 { x.neg() } else { x };

    let lap_k = laplacian_flat(k)?;
    let lap_f = laplacian_flat(f)?;
    let integrand = f.mul(&lap_k)?.sub(&signed(k.mul(&lap_f)?))?;
    let lhs = ball_pil(&integrand, RetractionTag::Gamma)?;

    let nu = outer_normal(dims)?;
    let boundary = f.mul(&nu.apply(k)?)?.sub(&signed(k.mul(&nu.apply(f)?)?))?;
    let rhs = sphere_pil(&boundary)?.neg();
    VerificationReport::from_pils("green", dims, started, lhs, rhs)
}

/// The divergence theorem over the superball:
/// `int_{(B_L, gamma)} dsvol div X = S eps(nu) int dsvol i_L^*(<X, nu>)`.
pub fn verify_divergence_theorem(
    x: &VectorField<RadialCoeff>,
) -> Result<VerificationReport, HarmonicError> {
    let started = Instant::now();
    let dims = x.dims();
    let div = divergence_flat(x)?;
    let lhs = ball_pil(&div, RetractionTag::Gamma)?;
    let rhs = boundary_flux_pil(x)?;
    VerificationReport::from_pils("divergence", dims, started, lhs, rhs)
}

/// A divergence-free field is a conserved quantity: its boundary flux
/// vanishes identically in `L`.
pub fn verify_conserved(x: &VectorField<RadialCoeff>) -> Result<VerificationReport, HarmonicError> {
    let started = Instant::now();
    let dims = x.dims();
    if !divergence_flat(x)?.is_zero() {
        return Err(HarmonicError::NotDivergenceFree);
    }
    let lhs = boundary_flux_pil(x)?;
    VerificationReport::from_pils("conserved", dims, started, lhs, PiLPoly::zero())
}

/// Noether check: the current of a harmonic `f` along an isometry generator
/// is divergence-free and has vanishing boundary flux.
pub fn verify_noether(
    f: &SuperFun,
    xi: &VectorField<RadialCoeff>,
) -> Result<VerificationReport, HarmonicError> {
    let current = crate::geometry::noether_current(f, xi)?;
    let mut report = verify_conserved(&current)?;
    report.theorem = "noether".to_string();
    Ok(report)
}

/// The closed form of the change-of-retraction boundary term on harmonic
/// input: `(-1)^s 2^n vol(B^m_L) f^{top}(0) - vol(B^{m|2n}_L) f(0)`.
pub fn boundary_term_closed_form(f: &SuperFun) -> Result<ExactValue, HarmonicError> {
    Ok(boundary_term_closed_form_pil(f)?.into_exact()?)
}

/// The closed form as a polynomial in `L` (its two summands carry `L^m` and
/// `L^{m-2n}` and need not collapse).
pub fn boundary_term_closed_form_pil(f: &SuperFun) -> Result<PiLPoly, HarmonicError> {
    let dims = f.dims();
    let first = classical_ball_times_top(f)?;
    let second = ball_volume(dims).scale(&f.eval_zero()?);
    let mut acc = PiLPoly::zero();
    acc.add_value(&first);
    acc.add_value(&second.neg());
    Ok(acc)
}

/// Boundary-term checks: the direct sum against the subtraction of ball
/// integrals, and (for harmonic `f`) against the closed form.
pub fn verify_boundary_term(f: &SuperFun) -> Result<VerificationReport, HarmonicError> {
    let started = Instant::now();
    let dims = f.dims();
    let direct = boundary_term_direct(f)?;
    let indirect = boundary_term(f)?;
    let mut lhs = PiLPoly::zero();
    lhs.add_value(&direct);
    let mut rhs = PiLPoly::zero();
    rhs.add_value(&indirect);
    VerificationReport::from_pils("boundary_term", dims, started, lhs, rhs)
}
