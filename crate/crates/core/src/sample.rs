//! Deterministic sample generators for the verification suites: random
//! polynomial superfunctions and vector fields, perturbed diagonal metrics
//! with their OSp frames, isometry generators, and random even invertible
//! supermatrices.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Metric, OSpFrame, VectorField};
use crate::grassmann::{MultiIndex, SpaceDims, SuperFun};
use crate::scalar::{rat, ratio, RadialCoeff, RadialFrac, Rational};
use crate::superlinalg::SuperMatrix;

/// Seeded generator so that every randomized suite is reproducible.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-3i64..=3);
    let den = rng.gen_range(1i64..=2);
    ratio(num, den)
}

fn random_monomial(rng: &mut ChaCha8Rng, m: usize, degree: usize) -> Vec<u32> {
    let mut alpha = vec![0u32; m];
    let total = rng.gen_range(0..=degree);
    for _ in 0..total {
        alpha[rng.gen_range(0..m)] += 1;
    }
    alpha
}

/// Random polynomial in `x^1 .. x^m` of degree at most `degree`.
pub fn random_poly(rng: &mut ChaCha8Rng, m: usize, degree: usize) -> RadialCoeff {
    let mut acc = RadialCoeff::zero(m);
    for _ in 0..rng.gen_range(1..=3) {
        let alpha = random_monomial(rng, m, degree);
        let c = random_rational(rng);
        acc = acc.add(&RadialCoeff::term(m, alpha, rat(0), 0, c));
    }
    acc
}

/// Random polynomial superfunction with a few populated Grassmann sectors.
pub fn random_superfun(rng: &mut ChaCha8Rng, dims: SpaceDims, degree: usize) -> SuperFun {
    let mut acc = SuperFun::zero(dims);
    let sectors = 1u32 << dims.odd();
    for _ in 0..rng.gen_range(1..=3) {
        let index = MultiIndex::from_mask(rng.gen_range(0..sectors));
        let coeff = random_poly(rng, dims.m, degree);
        acc = acc
            .add(&SuperFun::from_component(dims, index, coeff))
            .expect("same dims");
    }
    acc
}

/// Random parity-homogeneous polynomial superfunction.
pub fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    dims: SpaceDims,
    degree: usize,
    odd: bool,
) -> SuperFun {
    let f = random_superfun(rng, dims, degree);
    let (even_part, odd_part) = f.split_parity();
    let picked = if odd { odd_part } else { even_part };
    if picked.is_zero() {
        // guarantee a nonzero representative of the requested parity
        if odd && dims.n > 0 {
            SuperFun::theta(dims, 1).expect("n >= 1")
        } else {
            SuperFun::one(dims)
        }
    } else {
        picked
    }
}

/// Random polynomial vector field.
pub fn random_vector_field(
    rng: &mut ChaCha8Rng,
    dims: SpaceDims,
    degree: usize,
) -> VectorField<RadialCoeff> {
    let mut v = VectorField::zero(dims);
    for k in 1..=dims.total() {
        if rng.gen_bool(0.7) {
            v.set_component(k, random_superfun(rng, dims, degree));
        }
    }
    v
}

/// All coordinate translations `d_{x^i}`.
pub fn translations(dims: SpaceDims) -> Vec<VectorField<RadialCoeff>> {
    (1..=dims.m)
        .map(|i| VectorField::coordinate(dims, i))
        .collect()
}

/// All classical rotation generators `d_{x^i} x^j - d_{x^j} x^i`.
pub fn rotations(dims: SpaceDims) -> Vec<VectorField<RadialCoeff>> {
    let mut out = Vec::new();
    for i in 1..=dims.m {
        for j in (i + 1)..=dims.m {
            let mut v = VectorField::zero(dims);
            v.set_component(i, SuperFun::x(dims, j).expect("axis in range"));
            v.set_component(j, SuperFun::x(dims, i).expect("axis in range").neg());
            out.push(v);
        }
    }
    out
}

/// A random diagonal perturbation of the flat metric:
/// `g = diag((1 + q_i(x))^2)` on the even block and `u_l(x)` times the
/// standard odd pairing per odd pair, together with its OSp frame. The even
/// factors are squares so that `sqrt|sdet g|` exists in the coefficient ring.
pub fn perturbed_metric(rng: &mut ChaCha8Rng, dims: SpaceDims) -> Metric {
    let linear = |rng: &mut ChaCha8Rng, m: usize| -> RadialCoeff {
        let mut p = RadialCoeff::one(m);
        let axis = rng.gen_range(0..m) + 1;
        let c = ratio(rng.gen_range(-2i64..=2), rng.gen_range(2i64..=3));
        p = p.add(
            &RadialCoeff::coordinate(m, axis)
                .expect("axis in range")
                .scale(&c),
        );
        p
    };
    let even_factors: Vec<RadialCoeff> = (0..dims.m).map(|_| linear(rng, dims.m)).collect();
    let odd_factors: Vec<RadialCoeff> = (0..dims.n).map(|_| linear(rng, dims.m)).collect();

    let frac = |r: &RadialCoeff| RadialFrac::from_radial(r.clone());
    let g = SuperMatrix::from_fn(dims, dims.m, dims.odd(), |i, j| {
        if i < dims.m || j < dims.m {
            if i == j {
                let w = &even_factors[i];
                SuperFun::from_coeff(dims, frac(&w.mul(w)))
            } else {
                SuperFun::zero(dims)
            }
        } else {
            let (a, b) = (i - dims.m, j - dims.m);
            if a % 2 == 0 && b == a + 1 {
                SuperFun::from_coeff(dims, frac(&odd_factors[a / 2]).scale(&ratio(1, 2)))
            } else if a % 2 == 1 && b == a - 1 {
                SuperFun::from_coeff(dims, frac(&odd_factors[b / 2]).scale(&ratio(-1, 2)))
            } else {
                SuperFun::zero(dims)
            }
        }
    });

    let mut frame_vectors = Vec::with_capacity(dims.total());
    for (i, w) in even_factors.iter().enumerate() {
        let inv = RadialFrac::new(RadialCoeff::one(dims.m), w.clone()).expect("w is nonzero");
        let mut v = VectorField::zero(dims);
        v.set_component(i + 1, SuperFun::from_coeff(dims, inv));
        frame_vectors.push(v);
    }
    for (l, u) in odd_factors.iter().enumerate() {
        let inv = RadialFrac::new(RadialCoeff::one(dims.m), u.clone()).expect("u is nonzero");
        let mut v = VectorField::zero(dims);
        v.set_component(dims.m + 2 * l + 1, SuperFun::from_coeff(dims, inv));
        frame_vectors.push(v);
        let mut v = VectorField::zero(dims);
        v.set_component(dims.m + 2 * l + 2, SuperFun::constant(dims, rat(-2)));
        frame_vectors.push(v);
    }
    let frame = OSpFrame::new(dims, 0, dims.m, frame_vectors).expect("frame shape");
    Metric::new(dims, g, Some(frame)).expect("perturbed metric is well formed")
}

/// A random nilpotent supersymmetric perturbation of the flat metric
/// (no frame): exercises theta-dependent metric entries.
pub fn nilpotent_perturbed_metric(rng: &mut ChaCha8Rng, dims: SpaceDims) -> Metric {
    let flat = crate::geometry::flat_metric_matrix(dims);
    let theta_pair = |rng: &mut ChaCha8Rng| -> SuperFun<RadialFrac> {
        if dims.n == 0 {
            return SuperFun::zero(dims);
        }
        let j1 = rng.gen_range(1..=dims.odd());
        let mut j2 = rng.gen_range(1..=dims.odd());
        if j1 == j2 {
            j2 = if j1 == dims.odd() { 1 } else { j1 + 1 };
        }
        let prod = SuperFun::theta(dims, j1)
            .expect("index in range")
            .mul(&SuperFun::theta(dims, j2).expect("index in range"))
            .expect("same dims");
        let poly = random_poly(rng, dims.m, 1);
        crate::geometry::to_frac(&prod.scale_coeff(&poly))
    };
    let total = dims.total();
    let mut entries: Vec<SuperFun<RadialFrac>> = vec![SuperFun::zero(dims); total * total];
    for k in 0..total {
        for l in k..total {
            let parity_k = k >= dims.m;
            let parity_l = l >= dims.m;
            if parity_k != parity_l {
                continue;
            }
            if parity_k && k == l {
                continue;
            }
            if !rng.gen_bool(0.4) {
                continue;
            }
            let h = theta_pair(rng);
            entries[k * total + l] = h.clone();
            // supersymmetry: h_{lk} = (-1)^{|k||l|} h_{kl}
            entries[l * total + k] = if parity_k && parity_l { h.neg() } else { h };
        }
    }
    let perturbation = SuperMatrix::new(dims, dims.m, dims.odd(), entries).expect("square matrix");
    let g = flat.add(&perturbation).expect("same blocks");
    Metric::new(dims, g, None).expect("nilpotent perturbation is well formed")
}

/// Random even invertible supermatrix with unit bottoms on the diagonal.
pub fn random_even_supermatrix(
    rng: &mut ChaCha8Rng,
    dims: SpaceDims,
    p: usize,
    q: usize,
) -> SuperMatrix<RadialFrac> {
    let even_entry = |rng: &mut ChaCha8Rng, diagonal: bool| -> SuperFun<RadialFrac> {
        let mut f = if diagonal {
            SuperFun::one(dims)
        } else {
            SuperFun::zero(dims)
        };
        if dims.n > 0 && rng.gen_bool(0.6) {
            let pair = MultiIndex::from_indices([1usize, 2], dims.odd()).expect("indices");
            let coeff = RadialFrac::from_radial(random_poly(rng, dims.m, 1));
            f = f
                .add(&SuperFun::from_component(dims, pair, coeff))
                .expect("same dims");
        }
        if diagonal && rng.gen_bool(0.5) {
            // a coordinate factor keeps the Grassmann-and-x-constant part at 1
            let c = ratio(rng.gen_range(-1i64..=1), 2);
            let axis = rng.gen_range(0..dims.m) + 1;
            let bump = RadialCoeff::coordinate(dims.m, axis)
                .expect("axis in range")
                .mul(&random_poly(rng, dims.m, 1))
                .scale(&c);
            f = f
                .add(&SuperFun::from_coeff(dims, RadialFrac::from_radial(bump)))
                .expect("same dims");
        }
        f
    };
    let odd_entry = |rng: &mut ChaCha8Rng| -> SuperFun<RadialFrac> {
        if dims.n == 0 || !rng.gen_bool(0.7) {
            return SuperFun::zero(dims);
        }
        let j = rng.gen_range(1..=dims.odd());
        let coeff = RadialFrac::from_radial(random_poly(rng, dims.m, 1));
        SuperFun::theta(dims, j)
            .expect("index in range")
            .scale_coeff(&coeff)
    };
    SuperMatrix::from_fn(dims, p, q, |i, j| {
        let even_slot = (i < p) == (j < p);
        if even_slot {
            even_entry(rng, i == j)
        } else {
            odd_entry(rng)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let dims = SpaceDims::new(3, 1).unwrap();
        let a = random_superfun(&mut rng(7), dims, 2);
        let b = random_superfun(&mut rng(7), dims, 2);
        assert_eq!(a, b);
    }

    #[test]
    fn perturbed_metric_is_well_formed() {
        let dims = SpaceDims::new(2, 1).unwrap();
        for seed in 0..5u64 {
            let g = perturbed_metric(&mut rng(seed), dims);
            assert!(g.sqrt_sdet().is_some(), "seed {seed}");
            assert!(g.frame().is_some());
        }
    }

    #[test]
    fn nilpotent_metric_is_well_formed() {
        let dims = SpaceDims::new(2, 1).unwrap();
        for seed in 0..5u64 {
            let g = nilpotent_perturbed_metric(&mut rng(seed), dims);
            assert!(g.sqrt_sdet().is_some(), "seed {seed}");
        }
    }

    #[test]
    fn random_matrices_invert() {
        let dims = SpaceDims::new(2, 1).unwrap();
        for seed in 0..5u64 {
            let x = random_even_supermatrix(&mut rng(seed), dims, 2, 2);
            let inv = x.inverse().expect("invertible by construction");
            let id = SuperMatrix::identity(dims, 2, 2);
            assert_eq!(x.mul(&inv).unwrap(), id, "seed {seed}");
        }
    }
}
