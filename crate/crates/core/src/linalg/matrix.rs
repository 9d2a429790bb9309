use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Sparse integer matrix as sorted `(row, col, value)` triplets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Sorted by `(col, row)`, no zeros, no duplicates.
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    /// Builds a matrix, summing duplicate positions and dropping zeros.
    pub fn new(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            *acc.entry((c, r)).or_insert(0) += v;
        }
        let entries = acc.into_iter().filter(|&(_, v)| v != 0).map(|((c, r), v)| (r, c, v)).collect();
        SparseIntMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: vec![] }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix::new(n, n, (0..n).map(|i| (i, i, 1)))
    }

    pub fn from_dense(d: &[Vec<i64>]) -> Self {
        let rows = d.len();
        let cols = d.first().map_or(0, Vec::len);
        let mut e = vec![];
        for (r, row) in d.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                e.push((r, c, v));
            }
        }
        SparseIntMatrix::new(rows, cols, e)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            d[r][c] = v;
        }
        d
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        SparseIntMatrix::new(self.cols, self.rows, self.entries.iter().map(|&(r, c, v)| (c, r, v)))
    }

    pub fn columns(&self) -> Vec<Vec<(usize, i64)>> {
        let mut cols = vec![vec![]; self.cols];
        for &(r, c, v) in &self.entries {
            cols[c].push((r, v));
        }
        cols
    }

    pub fn row_lists(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![vec![]; self.rows];
        for &(r, c, v) in &self.entries {
            rows[r].push((c, v));
        }
        rows
    }

    /// `self * other`; panics on overflow of an entry.
    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let rows_of_self = self.columns();
        let mut acc: BTreeMap<(usize, usize), i128> = BTreeMap::new();
        for &(k, c, v) in &other.entries {
            for &(r, u) in &rows_of_self[k] {
                *acc.entry((r, c)).or_insert(0) += u as i128 * v as i128;
            }
        }
        SparseIntMatrix::new(
            self.rows,
            other.cols,
            acc.into_iter().map(|((r, c), v)| (r, c, i64::try_from(v).expect("matrix product overflow"))),
        )
    }
}
