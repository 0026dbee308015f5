//! Exhaustive checks over every 2x2 matrix (and every candidate) of GF(2)
//! and GF(3).

mod common;

use corestar::factorization::full_rank_factorize;
use corestar::geninv::{coexistence_bundle, InverseKind};
use corestar::linalg::{left_null_space, row_space};
use corestar::oracle::{enumerate_inverses, AllMatrices, OracleQuery, DEFAULT_BUDGET};
use corestar::verify::{satisfies, EquationSpec};
use corestar::{FieldDescriptor, Matrix};

fn all_2x2(p: u64) -> Vec<Matrix> {
    let field = FieldDescriptor::prime(p).unwrap();
    AllMatrices::new(field, 2, 2, DEFAULT_BUDGET).unwrap().iter().collect()
}

#[test]
fn five_and_three_equation_systems_agree_on_every_pair() {
    for p in [2, 3] {
        let space = all_2x2(p);
        for a in &space {
            for x in &space {
                assert_eq!(
                    satisfies(a, x, &EquationSpec::CoreFive),
                    satisfies(a, x, &EquationSpec::CoreThree),
                    "core systems differ on A = {a}, X = {x}"
                );
                assert_eq!(
                    satisfies(a, x, &EquationSpec::DualFive),
                    satisfies(a, x, &EquationSpec::DualThree),
                    "dual systems differ on A = {a}, X = {x}"
                );
            }
        }
    }
}

#[test]
fn unique_inverses_have_at_most_one_solution() {
    let systems = [
        EquationSpec::CoreThree,
        EquationSpec::DualThree,
        EquationSpec::penrose(&[1, 2, 3, 4]),
        EquationSpec::GroupSystem,
    ];
    for p in [2, 3] {
        for a in all_2x2(p) {
            for spec in &systems {
                let sols = enumerate_inverses(&OracleQuery::new(a.clone(), spec.clone())).unwrap();
                assert!(sols.len() <= 1, "{} solutions of {} for {a}", sols.len(), spec.name());
            }
        }
    }
}

#[test]
fn formulas_match_enumeration_for_every_kind() {
    for p in [2, 3] {
        for a in all_2x2(p) {
            for kind in InverseKind::ALL {
                let sols = enumerate_inverses(&OracleQuery::new(a.clone(), kind.defining_system())).unwrap();
                match kind.compute(&a).unwrap() {
                    Some(x) => assert!(sols.contains(&x), "{} of {a} not among solutions", kind.name()),
                    None => assert!(sols.is_empty(), "{} of {a} missed", kind.name()),
                }
            }
        }
    }
}

/// Power conditions against subspace equalities, with `B`, `C` the
/// standard factorization.
fn check_power_lemma(a: &Matrix, n: u32) {
    let f = full_rank_factorize(a);
    let (b, c) = (f.left(), f.right());
    let r = f.inner();
    let s_n = a.star().pow(n);

    let sb = &s_n * b;
    let left = &s_n * a;
    assert_eq!(sb.rank() == r, row_space(&left) == row_space(a), "epic form, A = {a}, n = {n}");

    let cs = c * &s_n;
    let right = a * &s_n;
    assert_eq!(cs.rank() == r, left_null_space(&right) == left_null_space(a), "monic form, A = {a}, n = {n}");

    assert_eq!(left_null_space(&sb), left_null_space(&left), "kernels, A = {a}, n = {n}");
    assert_eq!(row_space(&cs), row_space(&right), "images, A = {a}, n = {n}");
}

#[test]
fn power_lemma_holds_on_small_fields() {
    for p in [2, 3, 5] {
        for a in all_2x2(p) {
            for n in 1..=3 {
                check_power_lemma(&a, n);
            }
        }
    }
}

#[test]
fn power_lemma_holds_on_random_gaussian_matrices() {
    for a in common::qi_suite(7, 60) {
        for n in 1..=3 {
            check_power_lemma(&a, n);
        }
    }
}

#[test]
fn bundle_does_not_depend_on_exponent() {
    for p in [2, 3] {
        for a in all_2x2(p) {
            let reference = coexistence_bundle(&a, 2).unwrap();
            for n in 3..=5 {
                assert_eq!(coexistence_bundle(&a, n).unwrap(), reference, "A = {a}, n = {n}");
            }
        }
    }
}
