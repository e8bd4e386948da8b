use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::echelon::{rank_of, Field};
use crate::error::{Error, Result};

/// Sparse integer matrix in coordinate form, sorted by `(row, col)`, with no
/// duplicate coordinates and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, BigInt)>,
}

impl SparseIntMatrix {
    /// Sums duplicates and drops zeros.
    pub fn new(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (r, c, x) in triplets {
            if r >= rows {
                return Err(Error::IndexOutOfRange { index: r, bound: rows });
            }
            if c >= cols {
                return Err(Error::IndexOutOfRange { index: c, bound: cols });
            }
            *acc.entry((r, c)).or_insert_with(BigInt::zero) += x;
        }
        let entries = acc.into_iter().filter(|(_, x)| !x.is_zero()).map(|((r, c), x)| (r, c, x)).collect();
        Ok(SparseIntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: Vec::new() }
    }

    /// From sparse rows with small coefficients.
    pub fn from_rows(cols: usize, rows: &[Vec<(usize, i64)>]) -> Result<Self> {
        let triplets = rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |&(c, x)| (r, c, BigInt::from(x))));
        Self::new(rows.len(), cols, triplets)
    }

    pub fn from_dense(m: &[Vec<i64>]) -> Self {
        let cols = m.first().map_or(0, Vec::len);
        let rows: Vec<Vec<(usize, i64)>> =
            m.iter().map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x)).collect()).collect();
        Self::from_rows(cols, &rows).expect("dense rows are in range")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, BigInt)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        match self.entries.binary_search_by(|(a, b, _)| (*a, *b).cmp(&(r, c))) {
            Ok(k) => self.entries[k].2.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, x)| (*c, *r, x.clone())).collect();
        entries.sort_by_key(|a| (a.0, a.1));
        SparseIntMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Row lists `(col, value)`.
    pub fn row_lists(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, x) in &self.entries {
            out[*r].push((*c, x.clone()));
        }
        out
    }

    /// Row lists with machine-size entries, if every entry fits.
    pub fn small_rows(&self) -> Option<Vec<Vec<(usize, i64)>>> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, x) in &self.entries {
            out[*r].push((*c, x.to_i64()?));
        }
        Some(out)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, x) in &self.entries {
            out[*r][*c] = x.clone();
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseIntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let right = other.row_lists();
        let mut triplets = Vec::new();
        for (r, k, x) in &self.entries {
            for (c, y) in &right[*k] {
                triplets.push((*r, *c, x * y));
            }
        }
        Self::new(self.rows, other.cols, triplets)
    }

    /// Rank over ℚ or GF(p). Entries must fit in 64 bits.
    pub fn rank(&self, field: Field) -> Result<usize> {
        let rows = self
            .small_rows()
            .ok_or_else(|| Error::Unsupported("rank of a matrix with entries beyond 64 bits".into()))?;
        Ok(rank_of(field, self.cols, &rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_normalizes() {
        let m = SparseIntMatrix::new(
            2,
            2,
            vec![(0, 0, BigInt::from(1)), (0, 0, BigInt::from(-1)), (1, 1, BigInt::from(2)), (1, 1, BigInt::from(3))],
        )
        .unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), BigInt::from(5));
        assert!(SparseIntMatrix::new(1, 1, vec![(1, 0, BigInt::from(1))]).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 2], vec![0, 1]]);
        let b = SparseIntMatrix::from_dense(&[vec![1, -2], vec![0, 1]]);
        let id = a.mul(&b).unwrap();
        assert_eq!(id, SparseIntMatrix::from_dense(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(a.transpose().get(1, 0), BigInt::from(2));
        assert!(a.mul(&SparseIntMatrix::zeros(3, 1)).is_err());
    }
}
