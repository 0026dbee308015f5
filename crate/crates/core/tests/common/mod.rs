#![allow(dead_code)]

use corestar::linalg::{left_null_space, GaussianRational};
use corestar::{FieldDescriptor, Matrix, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const QI: FieldDescriptor = FieldDescriptor::GaussianRationals;

pub fn q(rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(FieldDescriptor::Rationals, rows)
}

pub fn gf(p: u64, rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(FieldDescriptor::prime(p).unwrap(), rows)
}

pub fn parse(field: FieldDescriptor, rows: &[&[&str]]) -> Matrix {
    Matrix::parse(field, rows).unwrap()
}

/// `num/den` with both drawn from [-3, 3], den nonzero.
fn small_ratio(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.gen_range(-3i64..=3);
    let den = loop {
        let d = rng.gen_range(-3i64..=3);
        if d != 0 {
            break d;
        }
    };
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn small_gaussian(rng: &mut ChaCha8Rng) -> Scalar {
    let re = small_ratio(rng);
    // Keep about a third of entries real.
    let im = if rng.gen_range(0..3) == 0 { BigRational::from_integer(BigInt::from(0)) } else { small_ratio(rng) };
    Scalar::Gaussian(GaussianRational::new(re, im))
}

/// Square matrix over Q(i) with small entries. The shape family cycles so
/// that full rank, rank-deficient, nilpotent and index > 1 cases all occur.
pub fn random_square(rng: &mut ChaCha8Rng, size: usize, family: usize) -> Matrix {
    let mut m = Matrix::zeros(QI, size, size);
    for i in 0..size {
        for j in 0..size {
            m.set(i, j, small_gaussian(rng));
        }
    }
    match family % 5 {
        // Dense.
        0 => {}
        // Repeated rows.
        1 => {
            let copies = rng.gen_range(1..=size);
            for _ in 0..copies {
                let (src, dst) = (rng.gen_range(0..size), rng.gen_range(0..size));
                for j in 0..size {
                    let v = m.get(src, j).clone();
                    m.set(dst, j, v);
                }
            }
        }
        // Zero rows and columns.
        2 => {
            let zero = QI.zero();
            for _ in 0..rng.gen_range(1..=size) {
                let k = rng.gen_range(0..size);
                for t in 0..size {
                    if rng.gen_bool(0.5) {
                        m.set(k, t, zero.clone());
                    } else {
                        m.set(t, k, zero.clone());
                    }
                }
            }
        }
        // Strictly upper triangular: nilpotent.
        3 => {
            for i in 0..size {
                for j in 0..=i {
                    m.set(i, j, QI.zero());
                }
            }
        }
        // Upper triangular with some zero diagonal entries.
        _ => {
            for i in 0..size {
                for j in 0..i {
                    m.set(i, j, QI.zero());
                }
                if rng.gen_bool(0.5) {
                    m.set(i, i, QI.zero());
                }
            }
        }
    }
    m
}

/// The fixed random suite: sizes 1 to 5, every shape family.
pub fn qi_suite(seed: u64, count: usize) -> Vec<Matrix> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let size = 1 + k % 5;
            random_square(&mut rng, size, k / 5)
        })
        .collect()
}

/// A random `rows x cols` matrix whose rows lie in the span of `basis`.
pub fn random_combination(rng: &mut ChaCha8Rng, basis: &Matrix, rows: usize) -> Matrix {
    let mut coeffs = Matrix::zeros(basis.field(), rows, basis.rows());
    for i in 0..rows {
        for j in 0..basis.rows() {
            coeffs.set(i, j, small_gaussian(rng));
        }
    }
    &coeffs * basis
}

/// Basis of `{y : M y = 0}` as the columns of the returned matrix.
pub fn right_null_columns(m: &Matrix) -> Matrix {
    left_null_space(&m.transpose()).basis().transpose()
}
