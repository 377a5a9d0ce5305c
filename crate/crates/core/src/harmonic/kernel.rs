//! Harmonic superfunction bases by exact linear algebra: row reduction of
//! the flat Laplacian on a monomial basis over the rationals.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::geometry::laplacian_flat;
use crate::grassmann::{MultiIndex, SpaceDims, SuperFun};
use crate::scalar::{rat, RadialCoeff, Rational};

use super::HarmonicError;

/// Monomials `x^alpha theta^I` with `|alpha| <= d` and `|I| <= min(2n, d)`.
fn monomials(dims: SpaceDims, degree: usize) -> Vec<(Vec<u32>, MultiIndex)> {
    let mut alphas: Vec<Vec<u32>> = Vec::new();
    let mut stack = vec![(Vec::<u32>::new(), 0usize)];
    while let Some((prefix, used)) = stack.pop() {
        if prefix.len() == dims.m {
            alphas.push(prefix);
            continue;
        }
        for a in 0..=(degree - used) {
            let mut next = prefix.clone();
            next.push(a as u32);
            stack.push((next, used + a));
        }
    }
    alphas.sort();

    let mut indices: Vec<MultiIndex> = (0..(1u32 << dims.odd()))
        .map(MultiIndex::from_mask)
        .filter(|i| i.len() <= degree)
        .collect();
    indices.sort();

    let mut out = Vec::with_capacity(alphas.len() * indices.len());
    for index in &indices {
        for alpha in &alphas {
            out.push((alpha.clone(), *index));
        }
    }
    out
}

fn monomial_superfun(dims: SpaceDims, alpha: &[u32], index: MultiIndex) -> SuperFun {
    SuperFun::from_component(
        dims,
        index,
        RadialCoeff::term(dims.m, alpha.to_vec(), rat(0), 0, rat(1)),
    )
}

/// Expand a polynomial superfunction in the monomial basis.
fn expand(
    f: &SuperFun,
    lookup: &BTreeMap<(Vec<u32>, MultiIndex), usize>,
) -> Result<Vec<(usize, Rational)>, HarmonicError> {
    let mut out = Vec::new();
    for (index, coeff) in f.components() {
        for (key, c) in coeff.terms() {
            if !key.e.is_zero() || key.k != 0 {
                return Err(HarmonicError::NotPolynomial);
            }
            let slot = lookup
                .get(&(key.alpha.clone(), index))
                .ok_or(HarmonicError::NotPolynomial)?;
            out.push((*slot, c.clone()));
        }
    }
    Ok(out)
}

/// Nullspace of an exact rational matrix in row-major order.
fn rational_kernel(rows: usize, cols: usize, mut a: Vec<Rational>) -> Vec<Vec<Rational>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0usize;
    for col in 0..cols {
        let Some(pivot) = (row..rows).find(|r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != row {
            for j in 0..cols {
                a.swap(row * cols + j, pivot * cols + j);
            }
        }
        let lead = a[row * cols + col].clone();
        for j in col..cols {
            a[row * cols + j] = &a[row * cols + j] / &lead;
        }
        for r in 0..rows {
            if r != row && !a[r * cols + col].is_zero() {
                let factor = a[r * cols + col].clone();
                for j in col..cols {
                    a[r * cols + j] = &a[r * cols + j] - &factor * &a[row * cols + j];
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::from_integer(1.into());
        for (col, pivot) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pivot {
                v[col] = -a[r * cols + free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// A basis of harmonic superfunctions with polynomial coefficients of degree
/// at most `d` in `x` (and Grassmann degree at most `d`), found by exact row
/// reduction of the Laplacian.
pub fn harmonic_basis(dims: SpaceDims, degree: usize) -> Result<Vec<SuperFun>, HarmonicError> {
    let monos = monomials(dims, degree);
    let lookup: BTreeMap<(Vec<u32>, MultiIndex), usize> = monos
        .iter()
        .enumerate()
        .map(|(i, key)| (key.clone(), i))
        .collect();
    let cols = monos.len();
    let mut matrix = vec![Rational::zero(); cols * cols];
    for (col, (alpha, index)) in monos.iter().enumerate() {
        let image = laplacian_flat(&monomial_superfun(dims, alpha, *index))?;
        for (slot, c) in expand(&image, &lookup)? {
            matrix[slot * cols + col] = c;
        }
    }
    let kernel = rational_kernel(cols, cols, matrix);
    let mut out = Vec::with_capacity(kernel.len());
    for v in kernel {
        let mut f = SuperFun::zero(dims);
        for (i, c) in v.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (alpha, index) = &monos[i];
            f = f.add(&SuperFun::from_component(
                dims,
                *index,
                RadialCoeff::term(dims.m, alpha.clone(), rat(0), 0, c),
            ))?;
        }
        out.push(f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(m: usize, n: usize) -> SpaceDims {
        SpaceDims::new(m, n).unwrap()
    }

    #[test]
    fn kernel_of_small_matrix() {
        // [[1, 2, 3], [2, 4, 6]] has kernel rank 2
        let a = vec![rat(1), rat(2), rat(3), rat(2), rat(4), rat(6)];
        let kernel = rational_kernel(2, 3, a);
        assert_eq!(kernel.len(), 2);
        for v in kernel {
            let dot = &v[0] + rat(2) * &v[1] + rat(3) * &v[2];
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn degree_one_kernel_is_everything() {
        let d = dims(2, 1);
        let basis = harmonic_basis(d, 1).unwrap();
        // span{1, x1, x2} x span{1, th1, th2}: all 9 monomials are harmonic
        assert_eq!(basis.len(), 9);
        for f in &basis {
            assert!(laplacian_flat(f).unwrap().is_zero());
        }
    }

    #[test]
    fn every_basis_element_is_harmonic() {
        for (m, n, d) in [(2, 0, 4), (2, 1, 3), (3, 1, 4)] {
            let dd = dims(m, n);
            let basis = harmonic_basis(dd, d).unwrap();
            assert!(!basis.is_empty());
            for f in &basis {
                assert!(
                    laplacian_flat(f).unwrap().is_zero(),
                    "non-harmonic element at ({m},{n},{d}): {f}"
                );
            }
        }
    }

    #[test]
    fn mvt_instance_lies_in_the_kernel_span() {
        // theta^1 theta^2 - 2 (x1)^2 is harmonic at (3,1)
        let d = dims(3, 1);
        let f = SuperFun::theta(d, 1)
            .unwrap()
            .mul(&SuperFun::theta(d, 2).unwrap())
            .unwrap()
            .sub(&SuperFun::x(d, 1).unwrap().pow(2).unwrap().scale(&rat(2)))
            .unwrap();
        assert!(laplacian_flat(&f).unwrap().is_zero());
        // and the kernel at degree 2 has the expected dimension margin
        let basis = harmonic_basis(d, 2).unwrap();
        assert!(!basis.is_empty());
        // non-harmonic probe: (x1)^2 alone
        let probe = SuperFun::x(d, 1).unwrap().pow(2).unwrap();
        assert!(!laplacian_flat(&probe).unwrap().is_zero());
    }
}
