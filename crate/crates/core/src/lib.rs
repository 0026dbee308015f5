//! Exact generalized inverses ({1,3}, {1,4}, group, Moore-Penrose, core and
//! dual core) of matrices over `Q`, `Q(i)` and `GF(p)`, computed from
//! full-rank factorizations and checked against brute force.
//!
//! Matrices act on row vectors throughout: `Im M` is the row space and
//! `Ker M = {x : xM = 0}`.

pub mod cli;
pub mod error;
pub mod factorization;
pub mod geninv;
pub mod linalg;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{FieldDescriptor, Matrix, Scalar};
