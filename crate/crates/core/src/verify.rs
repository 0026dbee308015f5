//! Exact checkers: Penrose subsets, the core and dual core systems, the
//! factorization triples of `(A*)^2 A` and `A (A*)^2`, and the kernel/image
//! direct-sum decompositions.
//!
//! Convention: matrices act on row vectors, so `Im M` is the row space and
//! `Ker M` the left null space. Right ideals (`aR`, `a°`) become column
//! spaces and right null spaces.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::factorization::{full_rank_factorize, uniqueness_witness, RankFactorization};
use crate::geninv::{existence_profile, mp_inverse, CoreMode};
use crate::linalg::{left_null_space, matrix_to_json, row_space, Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EquationSpec {
    /// Nonempty subset of the Penrose equations 1..=4, ascending.
    PenroseSubset(Vec<u8>),
    CoreFive,
    CoreThree,
    DualFive,
    DualThree,
    GroupSystem,
}

impl EquationSpec {
    pub fn try_penrose(eqs: &[u8]) -> Result<Self> {
        let mut set: Vec<u8> = eqs.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.is_empty() || set.iter().any(|e| !(1..=4).contains(e)) {
            return Err(Error::Dimension(format!("invalid Penrose subset {eqs:?}")));
        }
        Ok(EquationSpec::PenroseSubset(set))
    }

    /// Panicking form of [`EquationSpec::try_penrose`] for literal subsets.
    pub fn penrose(eqs: &[u8]) -> Self {
        EquationSpec::try_penrose(eqs).expect("valid Penrose subset")
    }

    pub fn name(&self) -> String {
        match self {
            EquationSpec::PenroseSubset(s) => {
                let parts: Vec<String> = s.iter().map(u8::to_string).collect();
                format!("penrose{{{}}}", parts.join(","))
            }
            EquationSpec::CoreFive => "core5".into(),
            EquationSpec::CoreThree => "core3".into(),
            EquationSpec::DualFive => "dual5".into(),
            EquationSpec::DualThree => "dual3".into(),
            EquationSpec::GroupSystem => "group".into(),
        }
    }

    /// Parse `core5`, `core3`, `dual5`, `dual3`, `group`, or a Penrose
    /// subset written like `1,3` or `1234`.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "core5" => Ok(EquationSpec::CoreFive),
            "core3" => Ok(EquationSpec::CoreThree),
            "dual5" => Ok(EquationSpec::DualFive),
            "dual3" => Ok(EquationSpec::DualThree),
            "group" => Ok(EquationSpec::GroupSystem),
            _ => {
                let digits: Vec<u8> = text
                    .chars()
                    .filter(|c| *c != ',')
                    .map(|c| c.to_digit(10).map(|d| d as u8))
                    .collect::<Option<_>>()
                    .ok_or_else(|| Error::Dimension(format!("unknown equation system {text:?}")))?;
                EquationSpec::try_penrose(&digits)
            }
        }
    }

    fn requires_square(&self) -> bool {
        !matches!(self, EquationSpec::PenroseSubset(_))
    }

    fn equations(&self) -> Vec<Equation> {
        use Equation::*;
        match self {
            EquationSpec::PenroseSubset(s) => s
                .iter()
                .map(|e| match e {
                    1 => Inner,
                    2 => Outer,
                    3 => HermitianAx,
                    _ => HermitianXa,
                })
                .collect(),
            EquationSpec::CoreFive => vec![Inner, Outer, HermitianAx, AxSquared, XaSquared],
            EquationSpec::CoreThree => vec![HermitianAx, AxSquared, XaSquared],
            EquationSpec::DualFive => vec![Inner, Outer, HermitianXa, XSquaredA, ASquaredX],
            EquationSpec::DualThree => vec![HermitianXa, XSquaredA, ASquaredX],
            EquationSpec::GroupSystem => vec![Inner, Outer, Commute],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Equation {
    Inner,
    Outer,
    HermitianAx,
    HermitianXa,
    AxSquared,
    XaSquared,
    XSquaredA,
    ASquaredX,
    Commute,
}

impl Equation {
    fn name(self) -> &'static str {
        match self {
            Equation::Inner => "AXA = A",
            Equation::Outer => "XAX = X",
            Equation::HermitianAx => "(AX)* = AX",
            Equation::HermitianXa => "(XA)* = XA",
            Equation::AxSquared => "AX^2 = X",
            Equation::XaSquared => "XA^2 = A",
            Equation::XSquaredA => "X^2A = X",
            Equation::ASquaredX => "A^2X = A",
            Equation::Commute => "AX = XA",
        }
    }

    /// Left side and right side.
    fn sides(self, a: &Matrix, x: &Matrix) -> (Matrix, Matrix) {
        match self {
            Equation::Inner => (&(a * x) * a, a.clone()),
            Equation::Outer => (&(x * a) * x, x.clone()),
            Equation::HermitianAx => {
                let ax = a * x;
                (ax.star(), ax)
            }
            Equation::HermitianXa => {
                let xa = x * a;
                (xa.star(), xa)
            }
            Equation::AxSquared => (&(a * x) * x, x.clone()),
            Equation::XaSquared => (&(x * a) * a, a.clone()),
            Equation::XSquaredA => (&(x * x) * a, x.clone()),
            Equation::ASquaredX => (&(a * a) * x, a.clone()),
            Equation::Commute => (a * x, x * a),
        }
    }

    /// Cheap pass/fail without building the residual.
    fn holds(self, a: &Matrix, x: &Matrix) -> bool {
        let (lhs, rhs) = self.sides(a, x);
        lhs == rhs
    }
}

/// One named check with its verdict and the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    /// Left side minus right side, on failure of an equation.
    pub residual: Option<Matrix>,
    /// Named bases or witnesses backing the verdict.
    pub bases: BTreeMap<String, Matrix>,
}

impl CheckResult {
    fn new(name: impl Into<String>, pass: bool) -> Self {
        CheckResult { name: name.into(), pass, residual: None, bases: BTreeMap::new() }
    }

    fn with_basis(mut self, key: &str, m: Matrix) -> Self {
        self.bases.insert(key.to_string(), m);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("check".into(), json!(self.name));
        obj.insert("pass".into(), json!(self.pass));
        if let Some(r) = &self.residual {
            obj.insert("residual".into(), matrix_to_json(r));
        }
        if !self.bases.is_empty() {
            let bases: Map<String, Value> =
                self.bases.iter().map(|(k, m)| (k.clone(), matrix_to_json(m))).collect();
            obj.insert("bases".into(), Value::Object(bases));
        }
        Value::Object(obj)
    }
}

/// Per-check results; the overall verdict is their conjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass(),
            "checks": self.checks.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
        })
    }
}

fn check_shapes(a: &Matrix, x: &Matrix, spec: &EquationSpec) -> Result<()> {
    if a.field() != x.field() {
        return Err(Error::FieldMismatch(a.field().to_string(), x.field().to_string()));
    }
    if spec.requires_square() {
        a.require_square()?;
    }
    if x.shape() != (a.cols(), a.rows()) {
        return Err(Error::Dimension(format!(
            "candidate is {}x{}, expected {}x{}",
            x.rows(),
            x.cols(),
            a.cols(),
            a.rows()
        )));
    }
    Ok(())
}

pub fn check_equations(a: &Matrix, x: &Matrix, spec: &EquationSpec) -> Result<VerificationReport> {
    check_shapes(a, x, spec)?;
    let checks = spec
        .equations()
        .into_iter()
        .map(|eq| {
            let (lhs, rhs) = eq.sides(a, x);
            let mut check = CheckResult::new(eq.name(), lhs == rhs);
            if !check.pass {
                check.residual = Some(&lhs - &rhs);
            }
            check
        })
        .collect();
    Ok(VerificationReport { checks })
}

/// Verdict only, for brute-force sweeps. Shapes are assumed conformable.
pub fn satisfies(a: &Matrix, x: &Matrix, spec: &EquationSpec) -> bool {
    spec.equations().into_iter().all(|eq| eq.holds(a, x))
}

/// The three factorizations named for `(A*)^2 A` (core) or `A (A*)^2` (dual).
pub fn factorization_triples(a: &Matrix, mode: CoreMode) -> Result<(Matrix, [RankFactorization; 3])> {
    a.require_square()?;
    let f = full_rank_factorize(a);
    let (b, c) = (f.left(), f.right());
    let s = a.star();
    let (b_star, c_star) = (b.star(), c.star());
    let pair = |l: Matrix, r: Matrix| RankFactorization::from_factors(l, r);
    Ok(match mode {
        CoreMode::Core => {
            let target = &(&s * &s) * a;
            let triples = [
                pair(&(&s * &s) * b, c.clone())?,
                pair(c_star.clone(), &(&b_star * &s) * a)?,
                pair(&s * &c_star, &b_star * a)?,
            ];
            (target, triples)
        }
        CoreMode::Dual => {
            let target = &(a * &s) * &s;
            let triples = [
                pair(b.clone(), &(c * &s) * &s)?,
                pair(&(a * &s) * &c_star, b_star.clone())?,
                pair(a * &c_star, &b_star * &s)?,
            ];
            (target, triples)
        }
    })
}

/// Each triple multiplies to the target, has an epic left and a monic right
/// factor through the rank of `A`, and every pair is linked by an invertible
/// witness.
pub fn check_factorization_triples(a: &Matrix, mode: CoreMode) -> Result<VerificationReport> {
    let (target, triples) = factorization_triples(a, mode)?;
    let r = a.rank();
    let mut checks = Vec::new();
    for (k, t) in triples.iter().enumerate() {
        let label = format!("T{}", k + 1);
        let mut product = CheckResult::new(format!("{label} multiplies to target"), *t.matrix() == target);
        if !product.pass {
            product.residual = Some(t.matrix() - &target);
        }
        checks.push(product);
        checks.push(
            CheckResult::new(
                format!("{label} left factor epic"),
                t.inner() == r && t.is_epic_left(),
            )
            .with_basis("left", t.left().clone()),
        );
        checks.push(
            CheckResult::new(
                format!("{label} right factor monic"),
                t.inner() == r && t.is_monic_right(),
            )
            .with_basis("right", t.right().clone()),
        );
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let name = format!("witness T{}~T{}", i + 1, j + 1);
        let witness = match uniqueness_witness(&triples[i], &triples[j]) {
            Ok(w) => w,
            Err(Error::DifferentMatrix) => None,
            Err(e) => return Err(e),
        };
        checks.push(match witness {
            Some(w) => CheckResult::new(name, true)
                .with_basis("nu", w.nu)
                .with_basis("nu_inverse", w.nu_inverse),
            None => CheckResult::new(name, false),
        });
    }
    Ok(VerificationReport { checks })
}

/// Verdicts of the kernel/image statements for one square matrix and
/// exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub n: u32,
    pub statements: Vec<CheckResult>,
    /// All statements hold.
    pub verdict: bool,
    /// All statements share one verdict.
    pub consistent: bool,
    /// `hasCore && hasDualCore` for `n >= 2`, `hasMP` for `n = 1`.
    pub expected: bool,
}

impl DecompositionReport {
    /// Consistent and equal to the inverse-existence prediction.
    pub fn agrees(&self) -> bool {
        self.consistent && self.verdict == self.expected
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "verdict": self.verdict,
            "consistent": self.consistent,
            "expected": self.expected,
            "agrees": self.agrees(),
            "note": "direct-summand conditions hold automatically over a field; only the equalities are tested",
            "statements": self.statements.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Column space `MR`, as a subspace of column vectors written as rows.
fn column_space(m: &Matrix) -> Subspace {
    row_space(&m.transpose())
}

/// Right null space `{y : My = 0}`, written as rows.
fn right_null_space(m: &Matrix) -> Subspace {
    left_null_space(&m.transpose())
}

fn equality_part(name: &str, lhs: Subspace, rhs: Subspace) -> CheckResult {
    CheckResult::new(name, lhs == rhs)
        .with_basis("lhs", lhs.basis().clone())
        .with_basis("rhs", rhs.basis().clone())
}

fn direct_sum_part(name: &str, left: Subspace, right: Subspace) -> Result<CheckResult> {
    let meet = left.intersection(&right)?;
    let pass = left.is_complement_of(&right)?;
    Ok(CheckResult::new(name, pass)
        .with_basis("left", left.basis().clone())
        .with_basis("right", right.basis().clone())
        .with_basis("intersection", meet.basis().clone()))
}

fn statement(name: &str, parts: Vec<CheckResult>) -> CheckResult {
    let pass = parts.iter().all(|p| p.pass);
    let mut out = CheckResult::new(name, pass);
    for p in parts {
        for (k, m) in p.bases {
            out.bases.insert(format!("{} / {}", p.name, k), m);
        }
    }
    out
}

pub fn check_decompositions(a: &Matrix, n: u32) -> Result<DecompositionReport> {
    a.require_square()?;
    if n < 1 {
        return Err(Error::Exponent { min: 1, got: n });
    }
    let s = a.star();
    let s_n = s.pow(n);
    let a_n = a.pow(n);
    let ker = left_null_space;
    let im = row_space;

    let statements = vec![
        statement(
            "Im (A*)^n A = Im A, Ker A (A*)^n = Ker A",
            vec![
                equality_part("Im (A*)^n A = Im A", im(&(&s_n * a)), im(a)),
                equality_part("Ker A (A*)^n = Ker A", ker(&(a * &s_n)), ker(a)),
            ],
        ),
        statement(
            "Im A^n A* = Im A*, Ker A* A^n = Ker A*",
            vec![
                equality_part("Im A^n A* = Im A*", im(&(&a_n * &s)), im(&s)),
                equality_part("Ker A* A^n = Ker A*", ker(&(&s * &a_n)), ker(&s)),
            ],
        ),
        statement(
            "M = Ker A + Im (A*)^n, M = Ker (A*)^n + Im A",
            vec![
                direct_sum_part("Ker A + Im (A*)^n", ker(a), im(&s_n))?,
                direct_sum_part("Ker (A*)^n + Im A", ker(&s_n), im(a))?,
            ],
        ),
        statement(
            "M = Ker A* + Im A^n, M = Ker A^n + Im A*",
            vec![
                direct_sum_part("Ker A* + Im A^n", ker(&s), im(&a_n))?,
                direct_sum_part("Ker A^n + Im A*", ker(&a_n), im(&s))?,
            ],
        ),
        statement(
            "R = lann(a) + R(a*)^n, R = lann((a*)^n) + Ra",
            vec![
                direct_sum_part("lann(a) + R(a*)^n", ker(a), im(&s_n))?,
                direct_sum_part("lann((a*)^n) + Ra", ker(&s_n), im(a))?,
            ],
        ),
        statement(
            "R = rann(a*) + a^nR, R = rann(a^n) + a*R",
            vec![
                direct_sum_part("rann(a*) + a^nR", right_null_space(&s), column_space(&a_n))?,
                direct_sum_part("rann(a^n) + a*R", right_null_space(&a_n), column_space(&s))?,
            ],
        ),
        statement(
            "R = lann(a*) + Ra^n, R = lann(a^n) + Ra*",
            vec![
                direct_sum_part("lann(a*) + Ra^n", ker(&s), im(&a_n))?,
                direct_sum_part("lann(a^n) + Ra*", ker(&a_n), im(&s))?,
            ],
        ),
        statement(
            "R = rann(a) + (a*)^nR, R = rann((a*)^n) + aR",
            vec![
                direct_sum_part("rann(a) + (a*)^nR", right_null_space(a), column_space(&s_n))?,
                direct_sum_part("rann((a*)^n) + aR", right_null_space(&s_n), column_space(a))?,
            ],
        ),
    ];

    let verdict = statements.iter().all(|s| s.pass);
    let consistent = statements.iter().all(|s| s.pass == verdict);
    let expected = if n == 1 {
        mp_inverse(a).is_some()
    } else {
        let p = existence_profile(a, n)?;
        p.has_core && p.has_dual_core
    };
    Ok(DecompositionReport { n, statements, verdict, consistent, expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldDescriptor;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn family() -> Matrix {
        Matrix::from_ints(Q, &[&[1, 0], &[1, 0]])
    }

    fn nilpotent() -> Matrix {
        Matrix::from_ints(Q, &[&[0, 1], &[0, 0]])
    }

    fn q(rows: &[&[&str]]) -> Matrix {
        Matrix::parse(Q, rows).unwrap()
    }

    #[test]
    fn mp_example_passes_all_four() {
        let x = q(&[&["1/2", "1/2"], &["0", "0"]]);
        let rep = check_equations(&family(), &x, &EquationSpec::penrose(&[1, 2, 3, 4])).unwrap();
        assert_eq!(rep.checks.len(), 4);
        assert!(rep.pass());
    }

    #[test]
    fn zero_candidate_is_outer() {
        let a = Matrix::from_ints(Q, &[&[3, 1, 4], &[1, 5, 9]]);
        let x = Matrix::zeros(Q, 3, 2);
        assert!(check_equations(&a, &x, &EquationSpec::penrose(&[2])).unwrap().pass());
        let rep = check_equations(&a, &x, &EquationSpec::penrose(&[1, 2])).unwrap();
        assert!(!rep.pass());
        let failure = rep.failures().next().unwrap();
        assert_eq!(failure.name, "AXA = A");
        assert_eq!(failure.residual.as_ref().unwrap(), &-&a);
    }

    #[test]
    fn core_example_passes_five() {
        let x = q(&[&["1/2", "1/2"], &["1/2", "1/2"]]);
        let rep = check_equations(&family(), &x, &EquationSpec::CoreFive).unwrap();
        assert_eq!(rep.checks.len(), 5);
        assert!(rep.pass());
        assert!(check_equations(&family(), &x, &EquationSpec::CoreThree).unwrap().pass());
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::zeros(Q, 2, 3);
        assert!(check_equations(&a, &Matrix::zeros(Q, 2, 3), &EquationSpec::penrose(&[1])).is_err());
        assert!(check_equations(&a, &Matrix::zeros(Q, 3, 2), &EquationSpec::CoreFive).is_err());
        assert!(EquationSpec::try_penrose(&[]).is_err());
        assert!(EquationSpec::try_penrose(&[5]).is_err());
    }

    #[test]
    fn parses_specs() {
        assert_eq!(EquationSpec::parse("1,3").unwrap(), EquationSpec::penrose(&[1, 3]));
        assert_eq!(EquationSpec::parse("4321").unwrap(), EquationSpec::penrose(&[1, 2, 3, 4]));
        assert_eq!(EquationSpec::parse("core3").unwrap(), EquationSpec::CoreThree);
        assert!(EquationSpec::parse("core4").is_err());
    }

    #[test]
    fn triples_of_the_rational_family() {
        let (target, _) = factorization_triples(&family(), CoreMode::Core).unwrap();
        assert_eq!(target, Matrix::from_ints(Q, &[&[2, 0], &[0, 0]]));
        let rep = check_factorization_triples(&family(), CoreMode::Core).unwrap();
        assert!(rep.pass(), "{:?}", rep.failures().collect::<Vec<_>>());
        let witnesses = rep.checks.iter().filter(|c| c.name.starts_with("witness")).count();
        assert_eq!(witnesses, 3);
        assert!(check_factorization_triples(&family(), CoreMode::Dual).unwrap().pass());
    }

    #[test]
    fn triples_of_identity_and_nilpotent() {
        let id = Matrix::identity(Q, 3);
        for mode in [CoreMode::Core, CoreMode::Dual] {
            let rep = check_factorization_triples(&id, mode).unwrap();
            assert!(rep.pass());
            for c in rep.checks.iter().filter(|c| c.name.starts_with("witness")) {
                assert!(c.bases["nu"].is_identity());
            }
        }
        let rep = check_factorization_triples(&nilpotent(), CoreMode::Core).unwrap();
        assert!(!rep.pass());
        assert!(rep.failures().any(|c| c.name == "T1 left factor epic"));
    }

    #[test]
    fn decompositions_of_the_rational_family() {
        let rep = check_decompositions(&family(), 2).unwrap();
        assert!(rep.verdict && rep.consistent && rep.expected && rep.agrees());
        let first_sum = &rep.statements[2];
        assert_eq!(
            first_sum.bases["Ker A + Im (A*)^n / left"],
            Matrix::from_ints(Q, &[&[1, -1]])
        );
        assert_eq!(
            first_sum.bases["Ker A + Im (A*)^n / right"],
            Matrix::from_ints(Q, &[&[1, 1]])
        );
        assert_eq!(
            first_sum.bases["Ker (A*)^n + Im A / left"],
            Matrix::from_ints(Q, &[&[0, 1]])
        );
        assert_eq!(
            first_sum.bases["Ker (A*)^n + Im A / right"],
            Matrix::from_ints(Q, &[&[1, 0]])
        );
    }

    #[test]
    fn decompositions_of_nilpotent() {
        let rep = check_decompositions(&nilpotent(), 2).unwrap();
        assert!(!rep.verdict && rep.consistent && !rep.expected && rep.agrees());
        let sum = &rep.statements[2];
        assert_eq!(sum.bases["Ker A + Im (A*)^n / left"], Matrix::from_ints(Q, &[&[0, 1]]));
        assert_eq!(sum.bases["Ker A + Im (A*)^n / right"].rows(), 0);
    }

    #[test]
    fn decompositions_with_n_one_track_moore_penrose() {
        let gf2 = FieldDescriptor::prime(2).unwrap();
        let a = Matrix::from_ints(gf2, &[&[1, 0], &[1, 0]]);
        let rep = check_decompositions(&a, 1).unwrap();
        assert!(!rep.expected && rep.agrees());
        let rep = check_decompositions(&nilpotent(), 1).unwrap();
        assert!(rep.expected && rep.agrees());
        for n in 1..=3 {
            assert!(check_decompositions(&Matrix::identity(Q, 2), n).unwrap().verdict);
        }
        assert!(check_decompositions(&nilpotent(), 0).is_err());
    }
}
