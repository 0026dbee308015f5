//! Gauss-Jordan elimination and the deterministic solvers built on it.
//!
//! Pivot rule: scan columns left to right and take the topmost unused
//! nonzero entry. Solvers set every free parameter to zero, so one-sided
//! inverses are reproducible.

use crate::error::Result;

use super::matrix::Matrix;

/// Reduced row echelon form together with its pivot columns (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(m: &Matrix) -> Rref {
    rref_limited(m, m.cols())
}

/// Row reduce, but only choose pivots among the first `pivot_cols` columns.
/// Used on augmented systems `[M | rhs]`.
fn rref_limited(m: &Matrix, pivot_cols: usize) -> Rref {
    let mut r = m.clone();
    let (rows, cols) = r.shape();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..pivot_cols {
        if next_row == rows {
            break;
        }
        let Some(found) = (next_row..rows).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        r.swap_rows(found, next_row);
        let inv = r.get(next_row, col).inv().expect("pivot is nonzero");
        {
            let entries = r.entries_mut();
            for j in col..cols {
                let idx = next_row * cols + j;
                entries[idx] = &entries[idx] * &inv;
            }
        }
        for i in 0..rows {
            if i == next_row || r.get(i, col).is_zero() {
                continue;
            }
            let factor = r.get(i, col).clone();
            let entries = r.entries_mut();
            for j in col..cols {
                let delta = &factor * &entries[next_row * cols + j];
                let idx = i * cols + j;
                entries[idx] = &entries[idx] - &delta;
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    Rref { reduced: r, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank()
}

/// One solution `X` of `M X = rhs` with all free parameters zero, or `None`
/// when the system is inconsistent.
pub fn solve(m: &Matrix, rhs: &Matrix) -> Result<Option<Matrix>> {
    let augmented = m.hstack(rhs)?;
    let n = m.cols();
    let k = rhs.cols();
    let Rref { reduced, pivots } = rref_limited(&augmented, n);
    // Rows below the pivots have a zero coefficient block; the right side must vanish too.
    for i in pivots.len()..reduced.rows() {
        if (n..n + k).any(|j| !reduced.get(i, j).is_zero()) {
            return Ok(None);
        }
    }
    let mut x = Matrix::zeros(m.field(), n, k);
    for (row, &col) in pivots.iter().enumerate() {
        for j in 0..k {
            x.set(col, j, reduced.get(row, n + j).clone());
        }
    }
    Ok(Some(x))
}

/// `X` with `M X = I`, present iff `M` has full row rank.
pub fn solve_right_inverse(m: &Matrix) -> Option<Matrix> {
    let id = Matrix::identity(m.field(), m.rows());
    solve(m, &id).expect("identity is conformable")
}

/// `X` with `X M = I`, present iff `M` has full column rank.
pub fn solve_left_inverse(m: &Matrix) -> Option<Matrix> {
    solve_right_inverse(&m.transpose()).map(|x| x.transpose())
}

/// Two-sided inverse of a square matrix; the `0 x 0` matrix inverts to itself.
pub fn inverse(m: &Matrix) -> Result<Option<Matrix>> {
    m.require_square()?;
    Ok(solve_right_inverse(m))
}

impl Matrix {
    pub fn rref(&self) -> Rref {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn left_inverse(&self) -> Option<Matrix> {
        solve_left_inverse(self)
    }

    pub fn right_inverse(&self) -> Option<Matrix> {
        solve_right_inverse(self)
    }

    /// Inverse of a square matrix. Panics on non-square input; see [`inverse`].
    pub fn inverse(&self) -> Option<Matrix> {
        inverse(self).unwrap_or_else(|e| panic!("{e}"))
    }
}
