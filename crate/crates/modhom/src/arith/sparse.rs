//! Sparse matrices over the rationals with exact elimination.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{ArithError, Rational};

/// Sparse rational matrix.  Zero entries are never stored; the entry map is
/// ordered, so iteration and every derived computation is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrixQ {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrixQ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrixQ { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from `(row, col, value)` triples, dropping zeros and summing
    /// duplicates.  Panics if an index is out of range.
    pub fn from_triples<I>(rows: usize, cols: usize, triples: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in triples {
            let cur = m.get(r, c) + v;
            m.set(r, c, cur);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut m = Self::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "dense row length");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
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

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sets an entry, removing it from storage when the value is zero.
    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        let cur = self.get(r, c) + v;
        self.set(r, c, cur);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn insert_block(&mut self, r0: usize, c0: usize, block: &SparseMatrixQ) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for (r, c, v) in block.iter() {
            self.set(r0 + r, c0 + c, v.clone());
        }
    }

    pub fn mul(&self, other: &SparseMatrixQ) -> SparseMatrixQ {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = SparseMatrixQ::zero(self.rows, other.cols);
        for (r, k, v) in self.iter() {
            for ((kk, c), w) in other.entries.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(*kk, k);
                out.add_to(r, *c, &(v * w));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        let mut out = vec![Rational::zero(); self.rows];
        for (r, c, a) in self.iter() {
            out[r] += a * &v[c];
        }
        out
    }

    fn to_dense_rows(&self) -> Vec<Vec<Rational>> {
        let mut rows = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            rows[r][c] = v.clone();
        }
        rows
    }

    pub fn rank(&self) -> usize {
        rref(self.to_dense_rows(), self.cols).pivots.len()
    }

    /// Basis of `{ v : self * v = 0 }`, one vector per free column of the
    /// reduced echelon form, in ascending free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let red = rref(self.to_dense_rows(), self.cols);
        let pivot_of_col: BTreeMap<usize, usize> =
            red.pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col.contains_key(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (&col, &prow) in &pivot_of_col {
                v[col] = -red.rows[prow][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of `self * x = b`, or `None` when the system is
    /// inconsistent.  Free variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, ArithError> {
        if b.len() != self.rows {
            return Err(ArithError::DimensionMismatch(format!(
                "rhs length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = self.to_dense_rows();
        for (row, rhs) in aug.iter_mut().zip(b) {
            row.push(rhs.clone());
        }
        let red = rref(aug, self.cols + 1);
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &col) in red.pivots.iter().enumerate() {
            x[col] = red.rows[i][self.cols].clone();
        }
        Ok(Some(x))
    }
}

struct Rref {
    rows: Vec<Vec<Rational>>,
    /// Pivot column of each echelon row, strictly increasing.
    pivots: Vec<usize>,
}

/// Exact Gauss-Jordan reduction.  Pivot choice (first row with the shortest
/// numerator/denominator at the current column) is deterministic and keeps
/// intermediate entries small at the scale this crate works at.
fn rref(mut rows: Vec<Vec<Rational>>, cols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        let mut best: Option<(usize, u64)> = None;
        for r in next_row..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let size = rows[r][col].numer().bits() + rows[r][col].denom().bits();
            if best.map_or(true, |(_, s)| size < s) {
                best = Some((r, size));
            }
        }
        let Some((prow, _)) = best else { continue };
        rows.swap(next_row, prow);
        let inv = rows[next_row][col].recip();
        for v in rows[next_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows.len() {
            if r == next_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut rows[r][col], Rational::zero());
            for c in (col + 1)..cols {
                let delta = &factor * &rows[next_row][c];
                rows[r][c] -= delta;
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    Rref { rows, pivots }
}
