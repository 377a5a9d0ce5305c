//! Christoffel symbols, the three divergence characterisations, gradient,
//! Laplacians, and the Noether current.

use crate::grassmann::{superpower_r, GrassmannError, Parity, SpaceDims, SuperFun};
use crate::scalar::{rat, ratio, RadialCoeff, RadialFrac};
use crate::superlinalg::invert_even;

use super::metric::Metric;
use super::vector::VectorField;
use super::GeometryError;

type Sf = SuperFun<RadialFrac>;
type Vf = VectorField<RadialFrac>;

/// Christoffel symbol `Gamma_{ij}^target` of the Levi-Civita connection:
/// `1/2 (d_i g_{jk} + (-1)^{|i||j|} d_j g_{ik}
///      - (-1)^{|k|(|i|+|j|)} d_k g_{ij}) g^{k target}`, summed over `k`.
pub fn christoffel(g: &Metric, i: usize, j: usize, target: usize) -> Result<Sf, GeometryError> {
    let dims = g.dims();
    let mut acc = Sf::zero(dims);
    let pi = dims.coord_parity(i);
    let pj = dims.coord_parity(j);
    for k in 1..=dims.total() {
        let g_inv = g.inv_entry(k, target);
        if g_inv.is_zero() {
            continue;
        }
        let pk = dims.coord_parity(k);
        let mut paren = g.entry(j, k).coord_derive(i)?;
        let term2 = g.entry(i, k).coord_derive(j)?;
        paren = if pi.koszul(pj) < 0 {
            paren.sub(&term2)?
        } else {
            paren.add(&term2)?
        };
        let mut term3 = g.entry(i, j).coord_derive(k)?;
        let sign3 = if pk.is_odd() && (pi.is_odd() ^ pj.is_odd()) {
            -1
        } else {
            1
        };
        if sign3 < 0 {
            term3 = term3.neg();
        }
        paren = paren.sub(&term3)?;
        acc = acc.add(&paren.mul(g_inv)?)?;
    }
    Ok(acc.scale(&ratio(1, 2)))
}

/// `nabla_{d_k} X = d_m * ((-1)^{|k||m|} d_k(X^m)
///                        + (-1)^{|m|(1+|k|+|l|)} Gamma_{kl}^m X^l)`.
fn nabla_coordinate(g: &Metric, k: usize, x: &Vf) -> Result<Vf, GeometryError> {
    let dims = g.dims();
    let pk = dims.coord_parity(k);
    let mut out = Vf::zero(dims);
    for m in 1..=dims.total() {
        let pm = dims.coord_parity(m);
        let mut comp = x.component(m).coord_derive(k)?;
        if pk.koszul(pm) < 0 {
            comp = comp.neg();
        }
        for l in 1..=dims.total() {
            let xl = x.component(l);
            if xl.is_zero() {
                continue;
            }
            let gamma = christoffel(g, k, l, m)?;
            if gamma.is_zero() {
                continue;
            }
            let pl = dims.coord_parity(l);
            let sign = if pm.is_odd() && !(pk.is_odd() ^ pl.is_odd()) {
                // (-1)^{|m|(1+|k|+|l|)}: odd exponent iff |m| = 1 and |k|+|l| even
                -1
            } else {
                1
            };
            let mut term = gamma.mul(xl)?;
            if sign < 0 {
                term = term.neg();
            }
            comp = comp.add(&term)?;
        }
        out.set_component(m, comp);
    }
    Ok(out)
}

/// Covariant derivative along a frame vector `e = d_k * c` with even `c`.
fn nabla_frame(g: &Metric, e: &Vf, x: &Vf) -> Result<Vf, GeometryError> {
    let dims = g.dims();
    let mut out = Vf::zero(dims);
    for (k, c) in e.components() {
        if c.is_zero() {
            continue;
        }
        let base = nabla_coordinate(g, k, x)?;
        // nabla_{d_k * c} X = (-1)^{|c||k|} c * nabla_{d_k} X
        let moved = c.koszul_past(dims.coord_parity(k));
        out = out.add(&base.scale_left(&moved)?)?;
    }
    Ok(out)
}

/// Divergence formula (i): `div X = 1/sqrt|sdet g| * d_{x^k}(sqrt|sdet g| X^k)`.
pub fn divergence_i(g: &Metric, x: &Vf) -> Result<Sf, GeometryError> {
    let dims = g.dims();
    let sqrt = g.sqrt_sdet().ok_or(GeometryError::SqrtUnavailable)?;
    let sqrt_inv = invert_even(sqrt)?;
    let mut acc = Sf::zero(dims);
    for (k, xk) in x.components() {
        if xk.is_zero() {
            continue;
        }
        acc = acc.add(&sqrt.mul(xk)?.coord_derive(k)?)?;
    }
    Ok(sqrt_inv.mul(&acc)?)
}

/// Divergence formula (ii), the Christoffel-free matrix form:
/// `div X = d_{x^k}(X^k)
///          + 1/2 (-1)^{|m| + |l|(|m|+|k|)} g^{mk} d_{x^l} g_{km} X^l`.
pub fn divergence_ii(g: &Metric, x: &Vf) -> Result<Sf, GeometryError> {
    let dims = g.dims();
    let mut acc = Sf::zero(dims);
    for (k, xk) in x.components() {
        acc = acc.add(&xk.coord_derive(k)?)?;
    }
    let mut corr = Sf::zero(dims);
    for m in 1..=dims.total() {
        let pm = dims.coord_parity(m);
        for k in 1..=dims.total() {
            let g_mk = g.inv_entry(m, k);
            if g_mk.is_zero() {
                continue;
            }
            let pk = dims.coord_parity(k);
            for l in 1..=dims.total() {
                let xl = x.component(l);
                if xl.is_zero() {
                    continue;
                }
                let dg = g.entry(k, m).coord_derive(l)?;
                if dg.is_zero() {
                    continue;
                }
                let pl = dims.coord_parity(l);
                let exponent = pm.is_odd() as u32
                    + pl.is_odd() as u32 * (pm.is_odd() as u32 + pk.is_odd() as u32);
                let mut term = g_mk.mul(&dg)?.mul(xl)?;
                if exponent % 2 == 1 {
                    term = term.neg();
                }
                corr = corr.add(&term)?;
            }
        }
    }
    Ok(acc.add(&corr.scale(&ratio(1, 2)))?)
}

/// Divergence formula (iii), the supertrace form evaluated in an OSp frame:
/// `div X = (-1)^{|e_j||X|} < nabla_{e_j} X, J e_j >`.
pub fn divergence_iii(g: &Metric, x: &Vf) -> Result<Sf, GeometryError> {
    let frame = g.frame().ok_or(GeometryError::FrameUnavailable)?;
    let dims = g.dims();
    let mut acc = Sf::zero(dims);
    let (even, odd) = x.split_parity();
    for (part, parity) in [(even, Parity::Even), (odd, Parity::Odd)] {
        if part.is_zero() {
            continue;
        }
        for j in 1..=dims.total() {
            let nabla = nabla_frame(g, frame.vector(j), &part)?;
            let mut term = g.pairing(&nabla, &frame.j_vector(j))?;
            if frame.parity(j).koszul(parity) < 0 {
                term = term.neg();
            }
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

/// Divergence over the flat metric in plain radial coefficients:
/// `div X = sum_k d_{x^k}(X^k)`.
pub fn divergence_flat(
    x: &VectorField<RadialCoeff>,
) -> Result<SuperFun<RadialCoeff>, GeometryError> {
    let mut acc = SuperFun::zero(x.dims());
    for (k, xk) in x.components() {
        acc = acc.add(&xk.coord_derive(k)?)?;
    }
    Ok(acc)
}

/// The flat OSp frame as pairs `(e_j, J e_j)` over plain radial coefficients.
pub fn flat_frame(dims: SpaceDims) -> Vec<(VectorField<RadialCoeff>, VectorField<RadialCoeff>)> {
    let mut out = Vec::with_capacity(dims.total());
    for k in 1..=dims.m {
        let e = VectorField::coordinate(dims, k);
        out.push((e.clone(), e));
    }
    for l in 1..=dims.n {
        let e_a = VectorField::coordinate(dims, dims.m + 2 * l - 1);
        let e_b = VectorField::coordinate(dims, dims.m + 2 * l).scale(&rat(-2));
        out.push((e_a.clone(), e_b.clone()));
        out.push((e_b, e_a.neg()));
    }
    out
}

/// Gradient over the flat metric: `grad f = (-1)^{|e_j||f|} e_j(f) J e_j`,
/// for parity-homogeneous `f`.
pub fn gradient_flat(f: &SuperFun<RadialCoeff>) -> Result<VectorField<RadialCoeff>, GeometryError> {
    let dims = f.dims();
    if f.is_zero() {
        return Ok(VectorField::zero(dims));
    }
    let parity = f.parity().ok_or(GeometryError::MixedParity)?;
    let mut out = VectorField::zero(dims);
    for (j, (e, je)) in flat_frame(dims).into_iter().enumerate() {
        let mut df = e.apply(f)?;
        if df.is_zero() {
            continue;
        }
        let ej_parity = if j < dims.m {
            Parity::Even
        } else {
            Parity::Odd
        };
        if ej_parity.koszul(parity) < 0 {
            df = df.neg();
        }
        out = out.add(&je.scale_left(&df)?)?;
    }
    Ok(out)
}

/// Gradient with respect to a metric carrying an OSp frame.
pub fn gradient(g: &Metric, f: &Sf) -> Result<Vf, GeometryError> {
    let frame = g.frame().ok_or(GeometryError::FrameUnavailable)?;
    let dims = g.dims();
    if f.is_zero() {
        return Ok(Vf::zero(dims));
    }
    let parity = f.parity().ok_or(GeometryError::MixedParity)?;
    let mut out = Vf::zero(dims);
    for j in 1..=dims.total() {
        let mut df = frame.vector(j).apply(f)?;
        if df.is_zero() {
            continue;
        }
        if frame.parity(j).is_odd() && parity.is_odd() {
            df = df.neg();
        }
        out = out.add(&frame.j_vector(j).scale_left(&df)?)?;
    }
    Ok(out)
}

/// `laplace f = -div(grad f)` via formula (iii).
pub fn laplacian(g: &Metric, f: &Sf) -> Result<Sf, GeometryError> {
    let grad = gradient(g, f)?;
    Ok(divergence_iii(g, &grad)?.neg())
}

/// The flat Laplacian
/// `laplace f = -(sum_k d_{x^k}^2 - 4 sum_{j odd} d_{theta^j} d_{theta^{j+1}}) f`.
pub fn laplacian_flat(f: &SuperFun<RadialCoeff>) -> Result<SuperFun<RadialCoeff>, GrassmannError> {
    let dims = f.dims();
    let mut acc = SuperFun::zero(dims);
    for i in 1..=dims.m {
        acc = acc.add(&f.x_derive(i)?.x_derive(i)?)?;
    }
    for l in 1..=dims.n {
        let dd = f.theta_derive(2 * l)?.theta_derive(2 * l - 1)?;
        acc = acc.sub(&dd.scale(&rat(4)))?;
    }
    Ok(acc.neg())
}

/// The Euler field `sum_i d_{x^i} * x^i - sum_j d_{theta^j} * theta^j`,
/// which acts as `x^i d_i + theta^j d_{theta^j}`.
pub fn euler_field(dims: SpaceDims) -> VectorField<RadialCoeff> {
    let mut v = VectorField::zero(dims);
    for i in 1..=dims.m {
        v.set_component(i, SuperFun::x(dims, i).expect("axis in range"));
    }
    for j in 1..=dims.odd() {
        v.set_component(
            dims.m + j,
            SuperFun::theta(dims, j).expect("index in range").neg(),
        );
    }
    v
}

/// The outer normal `nu = (1/R) * Euler` of the supersphere, with
/// `<nu, nu> = 1`, `nu(R) = 1`.
pub fn outer_normal(dims: SpaceDims) -> Result<VectorField<RadialCoeff>, GeometryError> {
    let r_inv = superpower_r(dims, rat(-1))?;
    Ok(euler_field(dims).scale_left(&r_inv)?)
}

/// The boundary coordinate field `d_tau = (R/r) d_r` in Cartesian components.
pub fn radial_tau_field(dims: SpaceDims) -> Result<VectorField<RadialCoeff>, GeometryError> {
    let factor = superpower_r(dims, rat(1))?.scale_coeff(&RadialCoeff::r_power(dims.m, rat(-2)));
    let mut v = VectorField::zero(dims);
    for i in 1..=dims.m {
        v.set_component(i, SuperFun::x(dims, i)?);
    }
    Ok(v.scale_left(&factor)?)
}

/// The conserved current of a superharmonic `f` and a Killing field `xi`:
/// `Y_xi = 1/2 e_j(f) Je_j(f) xi - xi(f) e_j(f) Je_j`.
///
/// Harmonicity of `f` is checked; the caller is responsible for `xi` being an
/// isometry generator.
pub fn noether_current(
    f: &SuperFun<RadialCoeff>,
    xi: &VectorField<RadialCoeff>,
) -> Result<VectorField<RadialCoeff>, GeometryError> {
    let dims = f.dims();
    if !laplacian_flat(f)?.is_zero() {
        return Err(GeometryError::NotHarmonic);
    }
    let mut density = SuperFun::zero(dims);
    let frame = flat_frame(dims);
    for (e, je) in &frame {
        density = density.add(&e.apply(f)?.mul(&je.apply(f)?)?)?;
    }
    let mut current = xi.scale_left(&density.scale(&ratio(1, 2)))?;
    let xi_f = xi.apply(f)?;
    for (e, je) in &frame {
        let scalar = xi_f.mul(&e.apply(f)?)?;
        current = current.sub(&je.scale_left(&scalar)?)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::metric::to_frac;
    use crate::grassmann::{superradius_sq, theta_sq};
    use crate::scalar::Rational;
    use crate::superlinalg::SuperMatrix;
    use num_traits::Zero;

    fn dims(m: usize, n: usize) -> SpaceDims {
        SpaceDims::new(m, n).unwrap()
    }

    fn sf_x(d: SpaceDims, i: usize) -> SuperFun<RadialCoeff> {
        SuperFun::x(d, i).unwrap()
    }

    fn sf_th(d: SpaceDims, j: usize) -> SuperFun<RadialCoeff> {
        SuperFun::theta(d, j).unwrap()
    }

    #[test]
    fn christoffel_flat_vanishes() {
        let d = dims(2, 1);
        let g = Metric::flat(d);
        for i in 1..=d.total() {
            for j in 1..=d.total() {
                for l in 1..=d.total() {
                    assert!(christoffel(&g, i, j, l).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn christoffel_polar_style_metric() {
        // n = 0, m = 2, metric diag(1, (x1)^2): Gamma^1_{22} = -x1,
        // checked against the classical formula for diagonal metrics.
        let d = dims(2, 0);
        let x1sq = to_frac(&sf_x(d, 1).mul(&sf_x(d, 1)).unwrap());
        let g_mat = SuperMatrix::from_fn(d, 2, 0, |i, j| match (i, j) {
            (0, 0) => Sf::one(d),
            (1, 1) => x1sq.clone(),
            _ => Sf::zero(d),
        });
        let g = Metric::new(d, g_mat, None).unwrap();
        let gamma = christoffel(&g, 2, 2, 1).unwrap();
        assert_eq!(gamma, to_frac(&sf_x(d, 1).neg()));
        // Gamma^2_{12} = 1/x1
        let gamma = christoffel(&g, 1, 2, 2).unwrap();
        let recip = Sf::from_coeff(
            d,
            RadialFrac::new(RadialCoeff::one(2), RadialCoeff::coordinate(2, 1).unwrap()).unwrap(),
        );
        assert_eq!(gamma, recip);
        // classical oracle for diagonal metrics:
        // Gamma^k_{ij} = 1/2 g^{kk} (d_i g_{jk} + d_j g_{ik} - d_k g_{ij})
        for i in 1..=2 {
            for j in 1..=2 {
                for k in 1..=2 {
                    let d_i = g.entry(j, k).coord_derive(i).unwrap();
                    let d_j = g.entry(i, k).coord_derive(j).unwrap();
                    let d_k = g.entry(i, j).coord_derive(k).unwrap();
                    let oracle = g
                        .inv_entry(k, k)
                        .mul(&d_i.add(&d_j).unwrap().sub(&d_k).unwrap())
                        .unwrap()
                        .scale(&ratio(1, 2));
                    assert_eq!(christoffel(&g, i, j, k).unwrap(), oracle, "{i}{j}{k}");
                }
            }
        }
    }

    #[test]
    fn divergence_examples_flat() {
        let d = dims(2, 1);
        let g = Metric::flat(d);
        // X = d_1 * x1 has divergence 1
        let mut x = VectorField::zero(d);
        x.set_component(1, sf_x(d, 1));
        let x = x.to_frac();
        let one = Sf::one(d);
        assert_eq!(divergence_i(&g, &x).unwrap(), one);
        assert_eq!(divergence_ii(&g, &x).unwrap(), one);
        assert_eq!(divergence_iii(&g, &x).unwrap(), one);
        // X = d_{theta^1} * theta^1 has divergence 1
        let mut x = VectorField::zero(d);
        x.set_component(d.m + 1, sf_th(d, 1));
        let x = x.to_frac();
        assert_eq!(divergence_i(&g, &x).unwrap(), one);
        assert_eq!(divergence_ii(&g, &x).unwrap(), one);
        assert_eq!(divergence_iii(&g, &x).unwrap(), one);
        // constant odd field is divergence free
        let mut x = VectorField::zero(d);
        x.set_component(d.m + 1, SuperFun::one(d));
        let x = x.to_frac();
        assert!(divergence_i(&g, &x).unwrap().is_zero());
        assert!(divergence_ii(&g, &x).unwrap().is_zero());
        assert!(divergence_iii(&g, &x).unwrap().is_zero());
    }

    #[test]
    fn gradient_examples() {
        let d = dims(2, 1);
        // grad x1 = d_1
        let grad = gradient_flat(&sf_x(d, 1)).unwrap();
        assert_eq!(grad, VectorField::coordinate(d, 1));
        // grad of a constant vanishes
        assert!(gradient_flat(&SuperFun::constant(d, rat(7)))
            .unwrap()
            .is_zero());
        // mixed parity rejected
        let mixed = sf_x(d, 1).add(&sf_th(d, 1)).unwrap();
        assert!(matches!(
            gradient_flat(&mixed),
            Err(GeometryError::MixedParity)
        ));
        // frame route agrees
        let g = Metric::flat(d);
        let via_frame = gradient(&g, &to_frac(&sf_x(d, 1))).unwrap();
        assert_eq!(via_frame, VectorField::coordinate(d, 1).to_frac());
    }

    #[test]
    fn laplacian_examples() {
        let d = dims(3, 1);
        // laplace(sum x_i^2) = -2m
        let mut f = SuperFun::zero(d);
        for i in 1..=d.m {
            f = f.add(&sf_x(d, i).mul(&sf_x(d, i)).unwrap()).unwrap();
        }
        assert_eq!(
            laplacian_flat(&f).unwrap(),
            SuperFun::constant(d, rat(-2 * d.m as i64))
        );
        // laplace(theta^1 theta^2) = -4
        let t12 = sf_th(d, 1).mul(&sf_th(d, 2)).unwrap();
        assert_eq!(
            laplacian_flat(&t12).unwrap(),
            SuperFun::constant(d, rat(-4))
        );
        // laplace(R^2) = -2M
        let r2 = superradius_sq(d);
        assert_eq!(
            laplacian_flat(&r2).unwrap(),
            SuperFun::constant(d, rat(-2 * d.superdim()))
        );
        // frame route agrees with the explicit formula on the flat metric
        let g = Metric::flat(d);
        for probe in [f, t12, superradius_sq(d), theta_sq(d)] {
            let direct = laplacian_flat(&probe).unwrap();
            let frame_route = laplacian(&g, &to_frac(&probe)).unwrap();
            assert_eq!(frame_route, to_frac(&direct));
        }
    }

    #[test]
    fn laplacian_local_identity() {
        // laplace f = -e_j(Je_j(f)) for the flat frame
        let d = dims(2, 1);
        let probes = [
            sf_x(d, 1).mul(&sf_x(d, 1)).unwrap(),
            sf_x(d, 2).mul(&sf_th(d, 1)).unwrap(),
            superradius_sq(d),
            sf_th(d, 1)
                .mul(&sf_th(d, 2))
                .unwrap()
                .mul(&sf_x(d, 1))
                .unwrap(),
        ];
        for f in probes {
            let mut acc = SuperFun::zero(d);
            for (e, je) in flat_frame(d) {
                acc = acc.add(&e.apply(&je.apply(&f).unwrap()).unwrap()).unwrap();
            }
            assert_eq!(acc.neg(), laplacian_flat(&f).unwrap());
        }
    }

    #[test]
    fn euler_and_normal() {
        let d = dims(3, 1);
        // Euler field acts as the degree operator on monomials
        let e = euler_field(d);
        let f = sf_x(d, 1)
            .mul(&sf_x(d, 1))
            .unwrap()
            .mul(&sf_th(d, 1))
            .unwrap();
        assert_eq!(e.apply(&f).unwrap(), f.scale(&rat(3)));
        // nu(R) = 1 and <d_tau, nu> = 1
        let nu = outer_normal(d).unwrap();
        let r = superpower_r(d, rat(1)).unwrap();
        assert_eq!(nu.apply(&r).unwrap(), SuperFun::one(d));
        let g = Metric::flat(d);
        let tau = radial_tau_field(d).unwrap();
        assert_eq!(
            g.pairing(&tau.to_frac(), &nu.to_frac()).unwrap(),
            Sf::one(d)
        );
    }

    #[test]
    fn noether_current_examples() {
        let d = dims(2, 0);
        // f = x1, xi = d_2: current is d_2 / 2
        let current = noether_current(&sf_x(d, 1), &VectorField::coordinate(d, 2)).unwrap();
        assert_eq!(current, VectorField::coordinate(d, 2).scale(&ratio(1, 2)));
        assert!(divergence_flat(&current).unwrap().is_zero());

        // rotation xi = d_2 * x1 - d_1 * x2: current (x2/2) d_1 + (x1/2) d_2
        let mut xi = VectorField::zero(d);
        xi.set_component(2, sf_x(d, 1));
        xi.set_component(1, sf_x(d, 2).neg());
        let current = noether_current(&sf_x(d, 1), &xi).unwrap();
        let mut expect = VectorField::zero(d);
        expect.set_component(1, sf_x(d, 2).scale(&ratio(1, 2)));
        expect.set_component(2, sf_x(d, 1).scale(&ratio(1, 2)));
        assert_eq!(current, expect);
        assert!(divergence_flat(&current).unwrap().is_zero());

        // odd harmonic f = x1 theta^1, xi = d_1
        let d = dims(2, 1);
        let f = sf_x(d, 1).mul(&sf_th(d, 1)).unwrap();
        let current = noether_current(&f, &VectorField::coordinate(d, 1)).unwrap();
        assert!(divergence_flat(&current).unwrap().is_zero());

        // non-harmonic input rejected
        let bad = sf_x(d, 1).mul(&sf_x(d, 1)).unwrap();
        assert!(matches!(
            noether_current(&bad, &VectorField::coordinate(d, 1)),
            Err(GeometryError::NotHarmonic)
        ));
    }

    #[test]
    fn divergence_product_rule() {
        // div(f X) = f div X + (-1)^{|f||X|} X(f)
        let d = dims(2, 1);
        let g = Metric::flat(d);
        let fields: Vec<VectorField<RadialCoeff>> = vec![
            {
                let mut x = VectorField::zero(d);
                x.set_component(1, sf_x(d, 2).mul(&sf_x(d, 1)).unwrap());
                x.set_component(d.m + 1, sf_th(d, 2));
                x
            },
            {
                let mut x = VectorField::zero(d);
                x.set_component(2, sf_th(d, 1).mul(&sf_th(d, 2)).unwrap());
                x.set_component(d.m + 2, sf_x(d, 1));
                x
            },
            {
                let mut x = VectorField::zero(d);
                x.set_component(1, sf_th(d, 1));
                x.set_component(d.m + 1, sf_x(d, 2));
                x
            },
        ];
        let funs: Vec<SuperFun<RadialCoeff>> = vec![
            sf_x(d, 1),
            sf_th(d, 1),
            sf_x(d, 2)
                .mul(&sf_th(d, 2))
                .unwrap()
                .add(&SuperFun::one(d))
                .unwrap(),
        ];
        for x in &fields {
            for f in &funs {
                let (fe, fo) = f.split_parity();
                let (xe, xo) = x.split_parity();
                for (fp, f_par) in [(&fe, 0u32), (&fo, 1u32)] {
                    if fp.is_zero() {
                        continue;
                    }
                    for (xp, x_par) in [(&xe, 0u32), (&xo, 1u32)] {
                        if xp.is_zero() {
                            continue;
                        }
                        let fx = xp.scale_left(fp).unwrap();
                        let lhs = divergence_i(&g, &fx.to_frac()).unwrap();
                        let mut rhs = to_frac(fp)
                            .mul(&divergence_i(&g, &xp.to_frac()).unwrap())
                            .unwrap();
                        let mut applied = xp.apply(fp).unwrap();
                        if f_par * x_par == 1 {
                            applied = applied.neg();
                        }
                        rhs = rhs.add(&to_frac(&applied)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn frame_expansion_reproduces_vectors() {
        // v = <v, e_j> J e_j
        let d = dims(2, 1);
        let g = Metric::flat(d);
        let frame = g.frame().unwrap();
        let mut v = VectorField::zero(d);
        v.set_component(1, sf_x(d, 2).mul(&sf_th(d, 1)).unwrap());
        v.set_component(2, SuperFun::constant(d, ratio(3, 7)));
        v.set_component(d.m + 1, sf_x(d, 1));
        v.set_component(d.m + 2, sf_th(d, 2).mul(&sf_x(d, 2)).unwrap());
        let v = v.to_frac();
        let mut rebuilt = Vf::zero(d);
        for j in 1..=d.total() {
            let coeff = g.pairing(&v, frame.vector(j)).unwrap();
            rebuilt = rebuilt
                .add(&frame.j_vector(j).scale_left(&coeff).unwrap())
                .unwrap();
        }
        assert_eq!(rebuilt, v);
    }

    #[test]
    fn gradient_symmetry() {
        // (grad f)(k) = (-1)^{|f||k|} (grad k)(f)
        let d = dims(2, 1);
        let pairs = [
            (sf_x(d, 1), sf_x(d, 2)),
            (sf_th(d, 1), sf_th(d, 2)),
            (sf_x(d, 1).mul(&sf_th(d, 1)).unwrap(), sf_th(d, 2)),
            (
                sf_x(d, 2).mul(&sf_x(d, 2)).unwrap(),
                sf_th(d, 1).mul(&sf_th(d, 2)).unwrap(),
            ),
        ];
        for (f, k) in pairs {
            let lhs = gradient_flat(&f).unwrap().apply(&k).unwrap();
            let mut rhs = gradient_flat(&k).unwrap().apply(&f).unwrap();
            let sign = f.parity().unwrap().koszul(k.parity().unwrap());
            if sign < 0 {
                rhs = rhs.neg();
            }
            assert_eq!(lhs, rhs, "f = {f}, k = {k}");
        }
    }

    #[test]
    fn vanishing_gradient_identity_for_euler_degree() {
        // quick sanity that Rational::zero is what laplacian-of-harmonic returns
        let d = dims(2, 1);
        let f = sf_x(d, 1).mul(&sf_th(d, 1)).unwrap();
        assert!(laplacian_flat(&f).unwrap().is_zero());
        assert_eq!(Rational::zero(), rat(0));
    }
}
