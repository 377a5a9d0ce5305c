//! Supermetrics and OSp frames.

use crate::grassmann::{berezin_sign, Parity, SpaceDims, SuperFun};
use crate::scalar::{rat, ratio, RadialCoeff, RadialFrac, Rational};
use crate::superlinalg::SuperMatrix;

use super::vector::VectorField;
use super::GeometryError;

type Sf = SuperFun<RadialFrac>;

/// An `OSp_{(t,s)|2n}` frame: fields `e_1 .. e_{m+2n}` whose Gram matrix is
/// the standard block form `diag(G_{t,s}, J_{2n})`.
#[derive(Debug, Clone)]
pub struct OSpFrame {
    dims: SpaceDims,
    t: usize,
    s: usize,
    vectors: Vec<VectorField<RadialFrac>>,
}

impl OSpFrame {
    pub fn new(
        dims: SpaceDims,
        t: usize,
        s: usize,
        vectors: Vec<VectorField<RadialFrac>>,
    ) -> Result<Self, GeometryError> {
        if t + s != dims.m || vectors.len() != dims.total() {
            return Err(GeometryError::FrameShape);
        }
        Ok(OSpFrame {
            dims,
            t,
            s,
            vectors,
        })
    }

    /// The standard flat frame: `d_{x^k}`, then `d_{theta^{2l-1}}` and
    /// `-2 d_{theta^{2l}}` for each odd pair.
    pub fn standard_flat(dims: SpaceDims) -> Self {
        let mut vectors = Vec::with_capacity(dims.total());
        for k in 1..=dims.m {
            vectors.push(VectorField::coordinate(dims, k));
        }
        for l in 1..=dims.n {
            vectors.push(VectorField::coordinate(dims, dims.m + 2 * l - 1));
            vectors.push(VectorField::coordinate(dims, dims.m + 2 * l).scale(&rat(-2)));
        }
        OSpFrame {
            dims,
            t: 0,
            s: dims.m,
            vectors,
        }
    }

    pub fn dims(&self) -> SpaceDims {
        self.dims
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.t, self.s)
    }

    /// Frame vector `e_j`, one-based.
    pub fn vector(&self, j: usize) -> &VectorField<RadialFrac> {
        &self.vectors[j - 1]
    }

    /// Parity of `e_j`.
    pub fn parity(&self, j: usize) -> Parity {
        if j <= self.dims.m {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `J e_j = sign * e_{j'}`.
    pub fn j_index(&self, j: usize) -> (usize, i64) {
        let m = self.dims.m;
        if j <= self.t {
            (j, -1)
        } else if j <= m {
            (j, 1)
        } else if (j - m) % 2 == 1 {
            (j + 1, 1)
        } else {
            (j - 1, -1)
        }
    }

    /// `J e_j` as a vector field.
    pub fn j_vector(&self, j: usize) -> VectorField<RadialFrac> {
        let (idx, sign) = self.j_index(j);
        let v = self.vector(idx).clone();
        if sign < 0 {
            v.neg()
        } else {
            v
        }
    }

    /// The standard Gram matrix entry `(g_0)_{kl}` for this signature.
    pub fn standard_gram(&self, k: usize, l: usize) -> Rational {
        let m = self.dims.m;
        if k <= m || l <= m {
            if k == l {
                if k <= self.t {
                    return rat(-1);
                }
                if k <= m {
                    return rat(1);
                }
            }
            return rat(0);
        }
        let (a, b) = (k - m, l - m);
        if a % 2 == 1 && b == a + 1 {
            rat(-1)
        } else if a % 2 == 0 && b == a - 1 {
            rat(1)
        } else {
            rat(0)
        }
    }
}

/// A semi-Riemannian supermetric: even, supersymmetric, invertible, with the
/// inverse cached and the square root of `|sdet g|` and an OSp frame kept
/// when they exist.
#[derive(Debug, Clone)]
pub struct Metric {
    dims: SpaceDims,
    g: SuperMatrix<RadialFrac>,
    g_inv: SuperMatrix<RadialFrac>,
    sqrt_sdet: Option<Sf>,
    frame: Option<OSpFrame>,
}

impl Metric {
    pub fn new(
        dims: SpaceDims,
        g: SuperMatrix<RadialFrac>,
        frame: Option<OSpFrame>,
    ) -> Result<Self, GeometryError> {
        let (p, q) = g.blocks();
        if p != dims.m || q != dims.odd() || g.dims() != dims {
            return Err(GeometryError::MetricShape);
        }
        if !g.is_even() {
            return Err(GeometryError::MetricNotEven);
        }
        // supersymmetry g_{kl} = (-1)^{|k||l|} g_{lk}
        for k in 0..dims.total() {
            for l in 0..dims.total() {
                let sign = g.index_parity(k).koszul(g.index_parity(l));
                let mut other = g.get(l, k).clone();
                if sign < 0 {
                    other = other.neg();
                }
                if *g.get(k, l) != other {
                    return Err(GeometryError::MetricNotSupersymmetric);
                }
            }
        }
        let g_inv = g.inverse()?;
        let sqrt_sdet = g.superdet()?.and_then_sqrt();
        let metric = Metric {
            dims,
            g,
            g_inv,
            sqrt_sdet,
            frame,
        };
        if let Some(frame) = &metric.frame {
            metric.verify_frame(frame)?;
        }
        Ok(metric)
    }

    /// The flat supermetric `diag(1_m, -J_{2n}/2)` with its standard frame.
    pub fn flat(dims: SpaceDims) -> Self {
        let g = flat_metric_matrix(dims);
        Metric::new(dims, g, Some(OSpFrame::standard_flat(dims)))
            .expect("the flat metric is well formed")
    }

    pub fn dims(&self) -> SpaceDims {
        self.dims
    }

    pub fn matrix(&self) -> &SuperMatrix<RadialFrac> {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &SuperMatrix<RadialFrac> {
        &self.g_inv
    }

    /// `g_{kl}`, one-based indices.
    pub fn entry(&self, k: usize, l: usize) -> &Sf {
        self.g.get(k - 1, l - 1)
    }

    /// `g^{kl}`, one-based indices.
    pub fn inv_entry(&self, k: usize, l: usize) -> &Sf {
        self.g_inv.get(k - 1, l - 1)
    }

    pub fn sqrt_sdet(&self) -> Option<&Sf> {
        self.sqrt_sdet.as_ref()
    }

    pub fn frame(&self) -> Option<&OSpFrame> {
        self.frame.as_ref()
    }

    /// Parity of the coordinate index `k` (one-based).
    pub fn coord_parity(&self, k: usize) -> Parity {
        self.dims.coord_parity(k)
    }

    /// The pairing `<X, Y> = sum_{k,l} (-1)^{|X^k||x^l|} g_{kl} X^k Y^l`.
    ///
    /// The sign moves the components of `X` past the symbol `d_{x^l}` and is
    /// applied per homogeneous piece of `X^k`.
    pub fn pairing(
        &self,
        x: &VectorField<RadialFrac>,
        y: &VectorField<RadialFrac>,
    ) -> Result<Sf, GeometryError> {
        let mut acc = Sf::zero(self.dims);
        for (k, xk) in x.components() {
            if xk.is_zero() {
                continue;
            }
            for (l, yl) in y.components() {
                if yl.is_zero() {
                    continue;
                }
                let g_kl = self.entry(k, l);
                if g_kl.is_zero() {
                    continue;
                }
                let moved = xk.koszul_past(self.coord_parity(l));
                acc = acc.add(&g_kl.mul(&moved)?.mul(yl)?)?;
            }
        }
        Ok(acc)
    }

    fn verify_frame(&self, frame: &OSpFrame) -> Result<(), GeometryError> {
        for k in 1..=self.dims.total() {
            for l in 1..=self.dims.total() {
                let gram = self.pairing(frame.vector(k), frame.vector(l))?;
                let want = Sf::constant(self.dims, frame.standard_gram(k, l));
                if gram != want {
                    return Err(GeometryError::FrameNotOrthosymplectic(k, l));
                }
            }
        }
        Ok(())
    }
}

trait AndThenSqrt {
    fn and_then_sqrt(self) -> Option<Sf>;
}

impl AndThenSqrt for Sf {
    /// Square root of an even superfunction over the fraction field:
    /// exact root of the bottom, then the finite binomial series in the
    /// nilpotent part.
    fn and_then_sqrt(self) -> Option<Sf> {
        sqrt_even_frac(&self)
    }
}

/// Exact square root of an even `SuperFun<RadialFrac>` whose bottom part
/// admits one; `None` otherwise.
pub fn sqrt_even_frac(f: &Sf) -> Option<Sf> {
    let dims = f.dims();
    let bottom = f.bottom();
    let root = bottom.sqrt()?;
    if root.is_zero() {
        return if f.is_zero() { Some(f.clone()) } else { None };
    }
    let nil = f
        .sub(&Sf::from_coeff(dims, bottom.clone()))
        .expect("same dims");
    let ratio_nil = nil.scale_coeff(&bottom.inv().ok()?);
    // (1 + u)^{1/2} = sum_k binom(1/2, k) u^k, exact on nilpotent u
    let mut series = Sf::zero(dims);
    let mut pow = Sf::one(dims);
    for k in 0..=dims.n as u32 {
        if k > 0 {
            pow = pow.mul(&ratio_nil).ok()?;
            if pow.is_zero() {
                break;
            }
        }
        let c = crate::scalar::binom(&ratio(1, 2), k);
        series = series.add(&pow.scale(&c)).ok()?;
    }
    Some(series.scale_coeff(&root))
}

/// The flat supermetric as a matrix: identity on the even block,
/// `-J_{2n}/2` on the odd block.
pub fn flat_metric_matrix(dims: SpaceDims) -> SuperMatrix<RadialFrac> {
    SuperMatrix::from_fn(dims, dims.m, dims.odd(), |i, j| {
        if i < dims.m {
            if i == j {
                Sf::one(dims)
            } else {
                Sf::zero(dims)
            }
        } else if j < dims.m {
            Sf::zero(dims)
        } else {
            let (a, b) = (i - dims.m, j - dims.m);
            if a % 2 == 0 && b == a + 1 {
                Sf::constant(dims, ratio(1, 2))
            } else if a % 2 == 1 && b == a - 1 {
                Sf::constant(dims, ratio(-1, 2))
            } else {
                Sf::zero(dims)
            }
        }
    })
}

/// Sign convention checks: `s(m,2n) + s(m-1,2n)` is even, so the boundary
/// sign `S` in the divergence theorem is `+1`.
pub fn boundary_sign() -> i64 {
    1
}

/// `(-1)^{s(m,2n)}` as used by the Berezin integral.
pub fn berezin_prefactor(dims: SpaceDims) -> i64 {
    berezin_sign(dims.n)
}

/// Embed a plain superfunction into fraction coefficients.
pub fn to_frac(f: &SuperFun<RadialCoeff>) -> Sf {
    f.map_coeffs(|c| RadialFrac::from_radial(c.clone()))
}

/// Convert back when all denominators are constants.
pub fn try_to_radial(f: &Sf) -> Option<SuperFun<RadialCoeff>> {
    let mut out = SuperFun::zero(f.dims());
    for (index, coeff) in f.components() {
        out = out
            .add(&SuperFun::from_component(
                f.dims(),
                index,
                coeff.as_radial()?,
            ))
            .ok()?;
    }
    Some(out)
}
