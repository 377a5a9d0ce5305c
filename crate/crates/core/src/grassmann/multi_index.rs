//! Grassmann multi-indices `I` as subsets of `{1, .., 2n}`, stored as
//! bitmasks. `theta^I` always means the product in ascending index order.

use std::fmt;

use super::{GrassmannError, Parity};

/// A strictly increasing subset of odd indices, as a bitmask (bit `j-1` for
/// index `j`). Ordered by bitmask value, which is a deterministic total order
/// used for storage and rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    /// The full top index `{1, .., 2n}`.
    pub fn full(n: usize) -> MultiIndex {
        let odd = 2 * n;
        assert!(odd <= 32, "at most 32 odd coordinates supported");
        if odd == 0 {
            MultiIndex(0)
        } else {
            MultiIndex(u32::MAX >> (32 - odd))
        }
    }

    /// Build directly from a bitmask (bit `j-1` set means `j` is present).
    pub fn from_mask(mask: u32) -> MultiIndex {
        MultiIndex(mask)
    }

    pub fn singleton(j: usize, odd: usize) -> Result<MultiIndex, GrassmannError> {
        if j == 0 || j > odd {
            return Err(GrassmannError::ThetaIndexOutOfRange { j, odd });
        }
        Ok(MultiIndex(1 << (j - 1)))
    }

    pub fn from_indices(
        indices: impl IntoIterator<Item = usize>,
        odd: usize,
    ) -> Result<MultiIndex, GrassmannError> {
        let mut mask = 0u32;
        for j in indices {
            if j == 0 || j > odd {
                return Err(GrassmannError::ThetaIndexOutOfRange { j, odd });
            }
            mask |= 1 << (j - 1);
        }
        Ok(MultiIndex(mask))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn parity(self) -> Parity {
        Parity::of_len(self.len())
    }

    pub fn contains(self, j: usize) -> bool {
        j >= 1 && (self.0 >> (j - 1)) & 1 == 1
    }

    pub fn indices(self) -> Vec<usize> {
        (1..=32).filter(|j| self.contains(*j)).collect()
    }

    pub fn max_index(self) -> usize {
        (32 - self.0.leading_zeros()) as usize
    }

    /// `theta^I * theta^J = sign * theta^{I u J}`; `None` when they overlap.
    ///
    /// The sign is the parity of the permutation sorting the concatenation of
    /// the two ascending index sequences: one `-1` per pair `(i, j)` with
    /// `i in I`, `j in J`, `i > j`.
    pub fn merge(self, other: MultiIndex) -> Option<(MultiIndex, i64)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let bit = rest.trailing_zeros();
            inversions += (self.0 >> (bit + 1)).count_ones();
            rest &= rest - 1;
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((MultiIndex(self.0 | other.0), sign))
    }

    /// Left derivative bookkeeping: for `j in I`, removing `theta^j` costs
    /// `(-1)^{#{i in I : i < j}}`. `None` when `j` is absent.
    pub fn remove(self, j: usize) -> Option<(MultiIndex, i64)> {
        if !self.contains(j) {
            return None;
        }
        let below = (self.0 & ((1 << (j - 1)) - 1)).count_ones();
        let sign = if below.is_multiple_of(2) { 1 } else { -1 };
        Some((MultiIndex(self.0 & !(1 << (j - 1))), sign))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|j| format!("th{j}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}
