//! Supermatrices over the superfunction ring: supertrace, superdeterminant
//! (Berezinian) and two-sided inversion by Schur complement with exact
//! nilpotent corrections.

use std::fmt;

use thiserror::Error;

use crate::grassmann::{CoeffField, CoeffRing, GrassmannError, Parity, SpaceDims, SuperFun};
use crate::scalar::{RadialFrac, ScalarError};

/// Errors from supermatrix algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("expected {expected} entries for a {rows}x{rows} matrix, got {got}")]
    SizeMismatch {
        expected: usize,
        rows: usize,
        got: usize,
    },
    #[error("matrix block structures do not match")]
    BlockMismatch,
    #[error("operation requires an even supermatrix (entry ({0},{1}) has wrong parity)")]
    NotEven(usize, usize),
    #[error("singular diagonal block: bottom part is not invertible")]
    SingularBlock,
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A `(p|q)`-graded square matrix with superfunction entries.
///
/// Row or column index `i` has parity 0 for `i < p` and 1 otherwise; an even
/// supermatrix has every entry homogeneous of parity `|i| + |j|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMatrix<C: CoeffRing = RadialFrac> {
    dims: SpaceDims,
    p: usize,
    q: usize,
    entries: Vec<SuperFun<C>>,
}

impl<C: CoeffRing> SuperMatrix<C> {
    pub fn new(
        dims: SpaceDims,
        p: usize,
        q: usize,
        entries: Vec<SuperFun<C>>,
    ) -> Result<Self, LinalgError> {
        let rows = p + q;
        if entries.len() != rows * rows {
            return Err(LinalgError::SizeMismatch {
                expected: rows * rows,
                rows,
                got: entries.len(),
            });
        }
        Ok(SuperMatrix {
            dims,
            p,
            q,
            entries,
        })
    }

    pub fn from_fn(
        dims: SpaceDims,
        p: usize,
        q: usize,
        mut f: impl FnMut(usize, usize) -> SuperFun<C>,
    ) -> Self {
        let rows = p + q;
        let mut entries = Vec::with_capacity(rows * rows);
        for i in 0..rows {
            for j in 0..rows {
                entries.push(f(i, j));
            }
        }
        SuperMatrix {
            dims,
            p,
            q,
            entries,
        }
    }

    pub fn identity(dims: SpaceDims, p: usize, q: usize) -> Self {
        Self::from_fn(dims, p, q, |i, j| {
            if i == j {
                SuperFun::one(dims)
            } else {
                SuperFun::zero(dims)
            }
        })
    }

    pub fn dims(&self) -> SpaceDims {
        self.dims
    }

    pub fn blocks(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn rows(&self) -> usize {
        self.p + self.q
    }

    pub fn get(&self, i: usize, j: usize) -> &SuperFun<C> {
        &self.entries[i * self.rows() + j]
    }

    /// Parity of index `i`.
    pub fn index_parity(&self, i: usize) -> Parity {
        if i < self.p {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn check_blocks(&self, rhs: &Self) -> Result<(), LinalgError> {
        if self.p != rhs.p || self.q != rhs.q {
            return Err(LinalgError::BlockMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.check_blocks(rhs)?;
        let mut entries = Vec::with_capacity(self.entries.len());
        for (a, b) in self.entries.iter().zip(&rhs.entries) {
            entries.push(a.add(b)?);
        }
        Self::new(self.dims, self.p, self.q, entries)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.check_blocks(rhs)?;
        let rows = self.rows();
        let mut entries = Vec::with_capacity(rows * rows);
        for i in 0..rows {
            for j in 0..rows {
                let mut acc = SuperFun::zero(self.dims);
                for k in 0..rows {
                    acc = acc.add(&self.get(i, k).mul(rhs.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Self::new(self.dims, self.p, self.q, entries)
    }

    /// Entrywise map (derivatives and embeddings).
    pub fn map_entries<D: CoeffRing>(
        &self,
        mut f: impl FnMut(&SuperFun<C>) -> Result<SuperFun<D>, GrassmannError>,
    ) -> Result<SuperMatrix<D>, LinalgError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(f(e)?);
        }
        SuperMatrix::new(self.dims, self.p, self.q, entries)
    }

    /// Every entry parity-homogeneous of parity `|i| + |j|`.
    pub fn is_even(&self) -> bool {
        let rows = self.rows();
        for i in 0..rows {
            for j in 0..rows {
                let want = self.index_parity(i).koszul(Parity::Odd)
                    * self.index_parity(j).koszul(Parity::Odd);
                let entry = self.get(i, j);
                if entry.is_zero() {
                    continue;
                }
                match entry.parity() {
                    Some(Parity::Even) if want == 1 => {}
                    Some(Parity::Odd) if want == -1 => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn require_even(&self) -> Result<(), LinalgError> {
        let rows = self.rows();
        for i in 0..rows {
            for j in 0..rows {
                let even_slot = self.index_parity(i) == self.index_parity(j);
                let entry = self.get(i, j);
                if entry.is_zero() {
                    continue;
                }
                match (entry.parity(), even_slot) {
                    (Some(Parity::Even), true) | (Some(Parity::Odd), false) => {}
                    _ => return Err(LinalgError::NotEven(i, j)),
                }
            }
        }
        Ok(())
    }

    /// Graded trace, extended linearly to inhomogeneous matrices:
    /// the even part of a diagonal entry weighs `(-1)^{|i|}`, the odd part
    /// weighs `+1`.
    pub fn supertrace(&self) -> Result<SuperFun<C>, LinalgError> {
        let mut acc = SuperFun::zero(self.dims);
        for i in 0..self.rows() {
            let (even, odd) = self.get(i, i).split_parity();
            let signed_even = if self.index_parity(i).is_odd() {
                even.neg()
            } else {
                even
            };
            acc = acc.add(&signed_even)?.add(&odd)?;
        }
        Ok(acc)
    }

    fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Vec<SuperFun<C>> {
        let mut out = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                out.push(self.get(row0 + i, col0 + j).clone());
            }
        }
        out
    }
}

/// Determinant of a square array of commuting (even) entries by cofactor
/// expansion along the first row.
fn det_even<C: CoeffRing>(
    dims: SpaceDims,
    size: usize,
    entries: &[SuperFun<C>],
) -> Result<SuperFun<C>, GrassmannError> {
    if size == 0 {
        return Ok(SuperFun::one(dims));
    }
    if size == 1 {
        return Ok(entries[0].clone());
    }
    let mut acc = SuperFun::zero(dims);
    for j in 0..size {
        let lead = &entries[j];
        if lead.is_zero() {
            continue;
        }
        let mut minor = Vec::with_capacity((size - 1) * (size - 1));
        for i in 1..size {
            for jj in 0..size {
                if jj != j {
                    minor.push(entries[i * size + jj].clone());
                }
            }
        }
        let mut term = lead.mul(&det_even(dims, size - 1, &minor)?)?;
        if j % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Inverse of an even superfunction via the finite geometric series
/// `(b + N)^{-1} = sum_k (-N/b)^k / b` with `N` Grassmann-nilpotent.
pub fn invert_even<C: CoeffField>(f: &SuperFun<C>) -> Result<SuperFun<C>, LinalgError> {
    let dims = f.dims();
    let bottom = f.bottom();
    if bottom.is_zero() {
        return Err(LinalgError::SingularBlock);
    }
    let bottom_inv = bottom.inv()?;
    let nil = f.sub(&SuperFun::from_coeff(dims, bottom))?;
    let seed = SuperFun::from_coeff(dims, bottom_inv);
    let step = nil.scale_coeff(&seed.bottom()).neg();
    let mut acc = SuperFun::zero(dims);
    let mut pow = SuperFun::one(dims);
    for _ in 0..=dims.n {
        acc = acc.add(&pow)?;
        pow = pow.mul(&step)?;
        if pow.is_zero() {
            break;
        }
    }
    Ok(acc.mul(&seed)?)
}

/// Inverse of a square matrix of even-parity entries: invert the
/// Grassmann-bottom part by exact Gaussian elimination over the coefficient
/// field, then correct by the nilpotent Neumann series.
fn invert_even_block<C: CoeffField>(
    dims: SpaceDims,
    size: usize,
    entries: &[SuperFun<C>],
) -> Result<Vec<SuperFun<C>>, LinalgError> {
    if size == 0 {
        return Ok(Vec::new());
    }
    // bottom part as, a size x size array over the field C
    let mut a: Vec<C> = entries.iter().map(|e| e.bottom()).collect();
    let mut inv: Vec<C> = (0..size * size)
        .map(|idx| {
            if idx / size == idx % size {
                C::one(dims.m)
            } else {
                C::zero(dims.m)
            }
        })
        .collect();
    for col in 0..size {
        let pivot_row = (col..size)
            .find(|r| !a[r * size + col].is_zero())
            .ok_or(LinalgError::SingularBlock)?;
        if pivot_row != col {
            for j in 0..size {
                a.swap(col * size + j, pivot_row * size + j);
                inv.swap(col * size + j, pivot_row * size + j);
            }
        }
        let pivot = a[col * size + col].clone();
        let pivot_inv = pivot.inv()?;
        for j in 0..size {
            a[col * size + j] = a[col * size + j].mul(&pivot_inv);
            inv[col * size + j] = inv[col * size + j].mul(&pivot_inv);
        }
        for r in 0..size {
            if r == col {
                continue;
            }
            let factor = a[r * size + col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..size {
                a[r * size + j] = a[r * size + j].sub(&factor.mul(&a[col * size + j]));
                inv[r * size + j] = inv[r * size + j].sub(&factor.mul(&inv[col * size + j]));
            }
        }
    }
    let bottom_inv: Vec<SuperFun<C>> = inv
        .into_iter()
        .map(|c| SuperFun::from_coeff(dims, c))
        .collect();

    // nilpotent part and Neumann series
    let nil: Vec<SuperFun<C>> = entries
        .iter()
        .map(|e| {
            let b = SuperFun::from_coeff(dims, e.bottom());
            e.sub(&b)
        })
        .collect::<Result<_, _>>()?;
    let mul = |x: &[SuperFun<C>], y: &[SuperFun<C>]| -> Result<Vec<SuperFun<C>>, GrassmannError> {
        let mut out = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let mut acc = SuperFun::zero(dims);
                for k in 0..size {
                    acc = acc.add(&x[i * size + k].mul(&y[k * size + j])?)?;
                }
                out.push(acc);
            }
        }
        Ok(out)
    };
    // step = -bottom_inv * nil
    let step: Vec<SuperFun<C>> = mul(&bottom_inv, &nil)?
        .into_iter()
        .map(|e| e.neg())
        .collect();
    let mut series: Vec<SuperFun<C>> = (0..size * size)
        .map(|idx| {
            if idx / size == idx % size {
                SuperFun::one(dims)
            } else {
                SuperFun::zero(dims)
            }
        })
        .collect();
    let mut pow = series.clone();
    for _ in 1..=2 * dims.n {
        pow = mul(&pow, &step)?;
        if pow.iter().all(|e| e.is_zero()) {
            break;
        }
        for (s, p) in series.iter_mut().zip(&pow) {
            *s = s.add(p)?;
        }
    }
    Ok(mul(&series, &bottom_inv)?)
}

impl<C: CoeffField> SuperMatrix<C> {
    /// Berezinian `sdet X = det(A - B D^{-1} C) det(D)^{-1}` of an even
    /// invertible supermatrix.
    pub fn superdet(&self) -> Result<SuperFun<C>, LinalgError> {
        self.require_even()?;
        let (p, q) = (self.p, self.q);
        if q == 0 {
            return Ok(det_even(self.dims, p, &self.entries)?);
        }
        let d = self.block(p, p, q, q);
        let det_d = det_even(self.dims, q, &d)?;
        let det_d_inv = invert_even(&det_d)?;
        if p == 0 {
            return Ok(det_d_inv);
        }
        let d_inv = invert_even_block(self.dims, q, &d)?;
        let a = self.block(0, 0, p, p);
        let b = self.block(0, p, p, q);
        let c = self.block(p, 0, q, p);
        // schur = A - B D^{-1} C
        let mut schur = Vec::with_capacity(p * p);
        for i in 0..p {
            for j in 0..p {
                let mut acc = a[i * p + j].clone();
                for k in 0..q {
                    for l in 0..q {
                        let t = b[i * q + k].mul(&d_inv[k * q + l])?.mul(&c[l * p + j])?;
                        acc = acc.sub(&t)?;
                    }
                }
                schur.push(acc);
            }
        }
        Ok(det_even(self.dims, p, &schur)?.mul(&det_d_inv)?)
    }

    /// Two-sided inverse of an even invertible supermatrix.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        self.require_even()?;
        let (p, q) = (self.p, self.q);
        if q == 0 {
            let inv = invert_even_block(self.dims, p, &self.entries)?;
            return Self::new(self.dims, p, q, inv);
        }
        if p == 0 {
            let inv = invert_even_block(self.dims, q, &self.entries)?;
            return Self::new(self.dims, p, q, inv);
        }
        let a = self.block(0, 0, p, p);
        let b = self.block(0, p, p, q);
        let c = self.block(p, 0, q, p);
        let d = self.block(p, p, q, q);
        let d_inv = invert_even_block(self.dims, q, &d)?;
        // schur = A - B D^{-1} C and its inverse
        let mut schur = Vec::with_capacity(p * p);
        for i in 0..p {
            for j in 0..p {
                let mut acc = a[i * p + j].clone();
                for k in 0..q {
                    for l in 0..q {
                        let t = b[i * q + k].mul(&d_inv[k * q + l])?.mul(&c[l * p + j])?;
                        acc = acc.sub(&t)?;
                    }
                }
                schur.push(acc);
            }
        }
        let s_inv = invert_even_block(self.dims, p, &schur)?;

        let dims = self.dims;
        let zero = SuperFun::zero(dims);
        let mut out = vec![zero; (p + q) * (p + q)];
        let idx = |i: usize, j: usize| i * (p + q) + j;
        // top-left: S^{-1}
        for i in 0..p {
            for j in 0..p {
                out[idx(i, j)] = s_inv[i * p + j].clone();
            }
        }
        // top-right: -S^{-1} B D^{-1}
        for i in 0..p {
            for j in 0..q {
                let mut acc = SuperFun::zero(dims);
                for k in 0..p {
                    for l in 0..q {
                        acc = acc.add(
                            &s_inv[i * p + k]
                                .mul(&b[k * q + l])?
                                .mul(&d_inv[l * q + j])?,
                        )?;
                    }
                }
                out[idx(i, p + j)] = acc.neg();
            }
        }
        // bottom-left: -D^{-1} C S^{-1}
        for i in 0..q {
            for j in 0..p {
                let mut acc = SuperFun::zero(dims);
                for k in 0..q {
                    for l in 0..p {
                        acc = acc.add(
                            &d_inv[i * q + k]
                                .mul(&c[k * p + l])?
                                .mul(&s_inv[l * p + j])?,
                        )?;
                    }
                }
                out[idx(p + i, j)] = acc.neg();
            }
        }
        // bottom-right: D^{-1} + D^{-1} C S^{-1} B D^{-1}
        for i in 0..q {
            for j in 0..q {
                let mut acc = d_inv[i * q + j].clone();
                for k in 0..p {
                    for l in 0..q {
                        // reuse bottom-left = -D^{-1} C S^{-1}
                        let bl = out[idx(p + i, k)].clone();
                        acc = acc.sub(&bl.mul(&b[k * q + l])?.mul(&d_inv[l * q + j])?)?;
                    }
                }
                out[idx(p + i, p + j)] = acc;
            }
        }
        Self::new(dims, p, q, out)
    }
}

impl<C: CoeffRing + fmt::Display> fmt::Display for SuperMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.rows())
                .map(|j| self.get(i, j).to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
