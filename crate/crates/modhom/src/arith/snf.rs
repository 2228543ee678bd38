//! Smith normal form with unimodular transforms and their inverses.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Decomposition `u * m * v = d` with `u`, `v` unimodular and `d` diagonal
/// with non-negative entries satisfying `d[i] | d[i+1]`.  The inverses are
/// tracked alongside, so `m = u_inv * d * v_inv`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[i] += q * row[t]; the inverse op acts on u_inv from the right as
    /// col[t] -= q * col[i].
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        self.m.add_row_multiple(i, t, q);
        self.u.add_row_multiple(i, t, q);
        self.u_inv.add_col_multiple(t, i, &(-q));
    }

    /// col[j] += q * col[t]; the inverse op acts on v_inv from the left as
    /// row[t] -= q * row[j].
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        self.m.add_col_multiple(j, t, q);
        self.v.add_col_multiple(j, t, q);
        self.v_inv.add_row_multiple(t, j, &(-q));
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Position of a nonzero entry of smallest absolute value in the submatrix
/// at `(t.., t..)`, scanning row-major for determinism.
fn smallest_nonzero(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| v.abs() < m.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Work {
        m: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = smallest_nonzero(&w.m, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            // Clear column t below the pivot, improving the pivot whenever a
            // remainder survives.
            let mut dirty = false;
            for i in t + 1..rows {
                if w.m.get(i, t).is_zero() {
                    continue;
                }
                let q = -(w.m.get(i, t) / w.m.get(t, t));
                w.add_row(i, t, &q);
                if !w.m.get(i, t).is_zero() {
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.m.get(t, j).is_zero() {
                    continue;
                }
                let q = -(w.m.get(t, j) / w.m.get(t, t));
                w.add_col(j, t, &q);
                if !w.m.get(t, j).is_zero() {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide the remaining submatrix; pulling a bad row up
            // strictly shrinks the pivot, so this terminates.
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(w.m.get(i, j) % w.m.get(t, t)).is_zero())
            });
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    w.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if w.m.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }

    debug_assert!(w.m.is_diagonal());
    Snf { u: w.u, d: w.m, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv }
}
