//! Full-rank (epic, monic) factorizations `A = B C` and the invertible
//! witness linking two factorizations of the same matrix.
//!
//! Under the row-vector action, `B` (m x r) is epic when it has full column
//! rank and `C` (r x n) is monic when it has full row rank.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{matrix_to_json, solve, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFactorization {
    a: Matrix,
    b: Matrix,
    c: Matrix,
}

impl RankFactorization {
    /// Wrap an arbitrary factor pair; the product is recomputed, nothing
    /// about the ranks is assumed.
    pub fn from_factors(b: Matrix, c: Matrix) -> Result<Self> {
        let a = b.try_mul(&c)?;
        Ok(RankFactorization { a, b, c })
    }

    /// The factored matrix.
    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    /// Left factor `B`.
    pub fn left(&self) -> &Matrix {
        &self.b
    }

    /// Right factor `C`.
    pub fn right(&self) -> &Matrix {
        &self.c
    }

    /// Inner dimension (columns of `B`).
    pub fn inner(&self) -> usize {
        self.b.cols()
    }

    pub fn is_epic_left(&self) -> bool {
        self.b.rank() == self.b.cols()
    }

    pub fn is_monic_right(&self) -> bool {
        self.c.rank() == self.c.rows()
    }

    /// Both factors have full rank through the inner dimension.
    pub fn is_epic_monic(&self) -> bool {
        self.is_epic_left() && self.is_monic_right()
    }

    pub fn to_json(&self) -> Value {
        json!({ "B": matrix_to_json(&self.b), "C": matrix_to_json(&self.c) })
    }
}

/// Standard factorization: `C` is the nonzero rows of `rref(A)` and `B` the
/// columns of `A` at the pivot positions. Rank zero gives `m x 0` and `0 x n`.
pub fn full_rank_factorize(a: &Matrix) -> RankFactorization {
    let r = a.rref();
    let b = a.select_columns(&r.pivots);
    let c = r.reduced.top_rows(r.rank());
    debug_assert_eq!(&b * &c, *a);
    RankFactorization { a: a.clone(), b, c }
}

/// Invertible `nu` with `B nu = B'` and `nu C' = C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessWitness {
    pub nu: Matrix,
    pub nu_inverse: Matrix,
}

impl UniquenessWitness {
    pub fn to_json(&self) -> Value {
        json!({ "nu": matrix_to_json(&self.nu), "nu_inverse": matrix_to_json(&self.nu_inverse) })
    }
}

/// Link two factorizations of the same matrix.
///
/// Both inputs are re-checked to be (epic, monic) with equal inner
/// dimension; `None` means a check failed, never that a valid pair was
/// left unlinked.
pub fn uniqueness_witness(
    f: &RankFactorization,
    g: &RankFactorization,
) -> Result<Option<UniquenessWitness>> {
    if f.a.field() != g.a.field() {
        return Err(Error::FieldMismatch(f.a.field().to_string(), g.a.field().to_string()));
    }
    if f.a != g.a {
        return Err(Error::DifferentMatrix);
    }
    if f.inner() != g.inner() || !f.is_epic_monic() || !g.is_epic_monic() {
        return Ok(None);
    }
    // B has full column rank, so this solution is the only one.
    let Some(nu) = solve(&f.b, &g.b)? else {
        return Ok(None);
    };
    let Some(nu_inverse) = nu.inverse() else {
        return Ok(None);
    };
    if &nu * &g.c != f.c {
        return Ok(None);
    }
    Ok(Some(UniquenessWitness { nu, nu_inverse }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldDescriptor;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    #[test]
    fn factorizes_repeated_row() {
        let a = Matrix::from_ints(Q, &[&[1, 0], &[1, 0]]);
        let f = full_rank_factorize(&a);
        assert_eq!(f.left(), &Matrix::from_ints(Q, &[&[1], &[1]]));
        assert_eq!(f.right(), &Matrix::from_ints(Q, &[&[1, 0]]));
        assert!(f.is_epic_monic());
    }

    #[test]
    fn factorizes_identity_and_zero() {
        let id = Matrix::identity(Q, 3);
        let f = full_rank_factorize(&id);
        assert_eq!((f.left(), f.right()), (&id, &id));

        let f = full_rank_factorize(&Matrix::zeros(Q, 2, 2));
        assert_eq!(f.left().shape(), (2, 0));
        assert_eq!(f.right().shape(), (0, 2));
        assert!(f.is_epic_monic());
    }

    #[test]
    fn witness_for_rescaled_factors() {
        let f = RankFactorization::from_factors(
            Matrix::from_ints(Q, &[&[1], &[1]]),
            Matrix::from_ints(Q, &[&[1, 0]]),
        )
        .unwrap();
        let g = RankFactorization::from_factors(
            Matrix::from_ints(Q, &[&[2], &[2]]),
            Matrix::parse(Q, &[&["1/2", "0"]]).unwrap(),
        )
        .unwrap();
        let w = uniqueness_witness(&f, &g).unwrap().unwrap();
        assert_eq!(w.nu, Matrix::from_ints(Q, &[&[2]]));
        assert_eq!(w.nu_inverse, Matrix::parse(Q, &[&["1/2"]]).unwrap());

        let same = uniqueness_witness(&f, &f).unwrap().unwrap();
        assert!(same.nu.is_identity());
    }

    #[test]
    fn witness_requires_same_matrix() {
        let f = full_rank_factorize(&Matrix::from_ints(Q, &[&[1, 0], &[1, 0]]));
        let g = full_rank_factorize(&Matrix::identity(Q, 2));
        assert_eq!(uniqueness_witness(&f, &g), Err(Error::DifferentMatrix));
        let h = full_rank_factorize(&Matrix::from_ints(
            FieldDescriptor::prime(2).unwrap(),
            &[&[1, 0], &[1, 0]],
        ));
        assert!(matches!(uniqueness_witness(&f, &h), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn witness_rejects_non_full_rank_factors() {
        // A = [[1, 1], [1, 1]] through a redundant inner dimension of 2.
        let a_fact = full_rank_factorize(&Matrix::from_ints(Q, &[&[1, 1], &[1, 1]]));
        let padded = RankFactorization::from_factors(
            Matrix::from_ints(Q, &[&[1, 0], &[1, 0]]),
            Matrix::from_ints(Q, &[&[1, 1], &[0, 0]]),
        )
        .unwrap();
        assert_eq!(padded.matrix(), a_fact.matrix());
        assert!(!padded.is_epic_monic());
        assert_eq!(uniqueness_witness(&a_fact, &padded).unwrap(), None);
    }
}
