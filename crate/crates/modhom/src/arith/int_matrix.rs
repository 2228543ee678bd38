//! Dense integer matrices at lattice scale.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::snf::smith_normal_form;

/// Dense matrix over the integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
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

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += q * row[source]
    pub fn add_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        assert_ne!(target, source);
        for j in 0..self.cols {
            let add = q * self.get(source, j);
            let cur = self.get(target, j) + add;
            self.set(target, j, cur);
        }
    }

    /// col[target] += q * col[source]
    pub fn add_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        assert_ne!(target, source);
        for i in 0..self.rows {
            let add = q * self.get(i, source);
            let cur = self.get(i, target) + add;
            self.set(i, target, cur);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, c).clone();
            self.set(i, c, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.get(k, k) * a.get(i, j) - a.get(i, k) * a.get(k, j);
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division is exact");
                    a.set(i, j, num / &prev);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }

    /// One integer solution of `self * x = b`, or `None` when no integral
    /// solution exists.  Uses the Smith decomposition `u * self * v = d`.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "rhs length");
        let snf = smith_normal_form(self);
        let ub = snf.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            let d = if i < self.cols { snf.d.get(i, i).clone() } else { BigInt::zero() };
            if d.is_zero() {
                if !ub[i].is_zero() {
                    return None;
                }
            } else {
                if !(&ub[i] % &d).is_zero() {
                    return None;
                }
                y[i] = &ub[i] / &d;
            }
        }
        Some(snf.v.mul_vec(&y))
    }

    /// Diagonal entries, for inspecting Smith forms.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows)
            .all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_hand_values() {
        // 2x2: ad - bc = 1*4 - 2*3 = -2.
        assert_eq!(IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).determinant(), BigInt::from(-2));
        // Expanded by hand along the first row: 1*(0-24) - 2*(0-20) + 3*(0-5) = 1.
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![5, 7, 9]]);
        assert_eq!(m.determinant(), BigInt::zero());
        let m = IntMatrix::from_rows(&[vec![2, 0, 0], vec![1, 3, 0], vec![4, 5, 7]]);
        assert_eq!(m.determinant(), BigInt::from(42));
        assert_eq!(IntMatrix::identity(5).determinant(), BigInt::one());
        // Zero pivot forces a swap: det [[0,1],[1,0]] = -1.
        assert_eq!(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).determinant(), BigInt::from(-1));
    }

    #[test]
    fn integer_solve() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        // 2x = 4, 3y = 9.
        let x = m.solve(&[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(3)]);
        // 2x = 3 has no integer solution.
        assert_eq!(m.solve(&[BigInt::from(3), BigInt::from(0)]), None);
        // Underdetermined consistent system.
        let m = IntMatrix::from_rows(&[vec![1, 1]]);
        let x = m.solve(&[BigInt::from(7)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![BigInt::from(7)]);
        // Overdetermined inconsistent system.
        let m = IntMatrix::from_rows(&[vec![1], vec![1]]);
        assert_eq!(m.solve(&[BigInt::from(1), BigInt::from(2)]), None);
    }

    #[test]
    fn row_and_col_ops() {
        let mut m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        m.add_row_multiple(1, 0, &BigInt::from(-3));
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, 2], vec![0, -2]]));
        m.add_col_multiple(1, 0, &BigInt::from(-2));
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, 0], vec![0, -2]]));
        m.negate_row(1);
        assert_eq!(m.get(1, 1), &BigInt::from(2));
    }
}
