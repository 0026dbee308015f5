//! Row spaces and left null spaces under the row-vector action `x -> xM`.
//!
//! A [`Subspace`] is stored by its RREF basis, which is canonical, so two
//! subspaces of the same ambient space are equal iff their bases are.

use crate::error::{Error, Result};

use super::elimination::rref;
use super::matrix::Matrix;
use super::scalar::FieldDescriptor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Span of the rows of `m`.
    pub fn span_of_rows(m: &Matrix) -> Subspace {
        let r = rref(m);
        Subspace { basis: r.reduced.top_rows(r.rank()) }
    }

    pub fn zero(field: FieldDescriptor, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(field, 0, ambient) }
    }

    pub fn whole(field: FieldDescriptor, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::identity(field, ambient) }
    }

    /// Basis rows in reduced row echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() == other.ambient() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "subspaces of dimension-{} and dimension-{} spaces",
                self.ambient(),
                other.ambient()
            )))
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span_of_rows(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        // x = aU = bW  <=>  (a, b) [U; -W] = 0.
        let stacked = self.basis.vstack(&-&other.basis)?;
        let coeffs = left_null_space(&stacked);
        let k = self.dim();
        let a = coeffs.basis.select_columns(&(0..k).collect::<Vec<_>>());
        Ok(Subspace::span_of_rows(&(&a * &self.basis)))
    }

    /// `self (+) other` equals the whole ambient space as an internal direct sum.
    pub fn is_complement_of(&self, other: &Subspace) -> Result<bool> {
        let total = self.sum(other)?;
        Ok(total.dim() == self.ambient() && self.dim() + other.dim() == self.ambient())
    }

    pub fn contains_rows_of(&self, m: &Matrix) -> Result<bool> {
        if m.cols() != self.ambient() {
            return Err(Error::Dimension("vector length differs from ambient dimension".into()));
        }
        Ok(self.sum(&Subspace::span_of_rows(m))?.dim() == self.dim())
    }
}

/// `Im M = {xM}`: the row space.
pub fn row_space(m: &Matrix) -> Subspace {
    Subspace::span_of_rows(m)
}

/// `Ker M = {x : xM = 0}`: the left null space.
pub fn left_null_space(m: &Matrix) -> Subspace {
    // Solve M^T y = 0 and read the solutions as rows.
    let t = m.transpose();
    let r = rref(&t);
    let n = t.cols();
    let field = m.field();
    let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(field, free.len(), n);
    for (k, &f) in free.iter().enumerate() {
        basis.set(k, f, field.one());
        for (row, &p) in r.pivots.iter().enumerate() {
            basis.set(k, p, -r.reduced.get(row, f));
        }
    }
    Subspace::span_of_rows(&basis)
}

/// Bases for the row space and left null space of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceReport {
    pub row_basis: Matrix,
    pub left_null_basis: Matrix,
}

pub fn subspace_report(m: &Matrix) -> SubspaceReport {
    SubspaceReport {
        row_basis: row_space(m).basis,
        left_null_basis: left_null_space(m).basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    #[test]
    fn report_of_repeated_row() {
        let rep = subspace_report(&Matrix::from_ints(Q, &[&[1, 0], &[1, 0]]));
        assert_eq!(rep.row_basis, Matrix::from_ints(Q, &[&[1, 0]]));
        assert_eq!(rep.left_null_basis, Matrix::from_ints(Q, &[&[1, -1]]));
    }

    #[test]
    fn report_of_identity_and_zero() {
        let id = Matrix::identity(Q, 3);
        let rep = subspace_report(&id);
        assert_eq!(rep.row_basis, id);
        assert_eq!(rep.left_null_basis.shape(), (0, 3));

        let z = Matrix::zeros(Q, 3, 2);
        let rep = subspace_report(&z);
        assert_eq!(rep.row_basis.shape(), (0, 2));
        assert_eq!(rep.left_null_basis, id);
    }

    #[test]
    fn intersections_and_complements() {
        let x = row_space(&Matrix::from_ints(Q, &[&[1, 0, 0], &[0, 1, 0]]));
        let y = row_space(&Matrix::from_ints(Q, &[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(x.intersection(&y).unwrap(), row_space(&Matrix::from_ints(Q, &[&[0, 1, 0]])));
        assert!(!x.is_complement_of(&y).unwrap());
        let z = row_space(&Matrix::from_ints(Q, &[&[1, 1, 1]]));
        assert!(x.is_complement_of(&z).unwrap());
        assert_eq!(x.intersection(&z).unwrap().dim(), 0);
        assert!(x.contains_rows_of(&Matrix::from_ints(Q, &[&[2, 3, 0]])).unwrap());
        assert!(!x.contains_rows_of(&Matrix::from_ints(Q, &[&[0, 0, 1]])).unwrap());
    }
}
