//! Exact scalars, dense matrices, elimination and subspaces.

mod elimination;
mod json;
mod matrix;
mod scalar;
mod subspace;

pub use elimination::{inverse, rank, rref, solve, solve_left_inverse, solve_right_inverse, Rref};
pub use json::{matrix_from_json, matrix_to_json, parse_matrix_json};
pub use matrix::Matrix;
pub use scalar::{parse_scalar, FieldDescriptor, GaussianRational, Prime, Scalar};
pub use subspace::{left_null_space, row_space, subspace_report, Subspace, SubspaceReport};

/// Conjugate transpose `M*`.
pub fn conjugate_transpose(m: &Matrix) -> Matrix {
    m.star()
}
