//! Brute-force ground truth over small prime fields.
//!
//! Candidates are enumerated in lexicographic order of their row-major
//! entries, so every list produced here is deterministic. Sweeps over all
//! `m x m` matrices split into disjoint index ranges; merging the partial
//! reports in index order gives the same result as a single-threaded run.

use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geninv::{coexistence_bundle, existence_profile, CoreMode, InverseKind};
use crate::linalg::{matrix_to_json, FieldDescriptor, Matrix, Scalar};
use crate::verify::{check_decompositions, check_factorization_triples, satisfies, EquationSpec};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct OracleQuery {
    pub a: Matrix,
    pub spec: EquationSpec,
    pub budget: u128,
}

impl OracleQuery {
    pub fn new(a: Matrix, spec: EquationSpec) -> Self {
        OracleQuery { a, spec, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }
}

fn field_elements(field: FieldDescriptor) -> Result<Vec<Scalar>> {
    field.elements().ok_or(Error::NotPrimeField("brute-force enumeration"))
}

fn count_matrices(p: u64, rows: usize, cols: usize) -> u128 {
    (p as u128).checked_pow((rows * cols) as u32).unwrap_or(u128::MAX)
}

/// Every `rows x cols` matrix over the prime field, lexicographically.
pub struct AllMatrices {
    field: FieldDescriptor,
    elements: Vec<Scalar>,
    rows: usize,
    cols: usize,
    total: u128,
}

impl AllMatrices {
    pub fn new(field: FieldDescriptor, rows: usize, cols: usize, budget: u128) -> Result<Self> {
        let elements = field_elements(field)?;
        let total = count_matrices(elements.len() as u64, rows, cols);
        if total > budget {
            return Err(Error::BudgetExceeded { needed: total, budget });
        }
        Ok(AllMatrices { field, elements, rows, cols, total })
    }

    pub fn len(&self) -> usize {
        self.total as usize
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// The `index`-th matrix; the first entry is the most significant digit.
    pub fn nth(&self, mut index: usize) -> Matrix {
        let p = self.elements.len();
        let n = self.rows * self.cols;
        let mut entries = vec![self.elements[0].clone(); n];
        for slot in (0..n).rev() {
            entries[slot] = self.elements[index % p].clone();
            index /= p;
        }
        Matrix::from_entries(self.field, self.rows, self.cols, entries).expect("shape matches")
    }

    pub fn iter(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.len()).map(move |i| self.nth(i))
    }
}

/// All solutions of `q.spec` for `q.a`, in lexicographic order.
pub fn enumerate_inverses(q: &OracleQuery) -> Result<Vec<Matrix>> {
    if q.a.field().modulus().is_none() {
        return Err(Error::NotPrimeField("enumerate_inverses"));
    }
    if !matches!(q.spec, EquationSpec::PenroseSubset(_)) {
        q.a.require_square()?;
    }
    let space = AllMatrices::new(q.a.field(), q.a.cols(), q.a.rows(), q.budget)?;
    Ok(space.iter().filter(|x| satisfies(&q.a, x, &q.spec)).collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KindTally {
    pub predicate_true: usize,
    pub oracle_nonempty: usize,
    pub disagreements: usize,
}

impl KindTally {
    fn merge(&mut self, other: &KindTally) {
        self.predicate_true += other.predicate_true;
        self.oracle_nonempty += other.oracle_nonempty;
        self.disagreements += other.disagreements;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub index: usize,
    pub matrix: Matrix,
    pub check: String,
}

/// Outcome of comparing every criterion with brute force over all
/// `m x m` matrices of `GF(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub p: u64,
    pub m: usize,
    pub n: u32,
    pub matrices: usize,
    /// Keyed by inverse kind name and by the structural checks.
    pub tallies: BTreeMap<String, KindTally>,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    fn empty(p: u64, m: usize, n: u32) -> Self {
        AgreementReport { p, m, n, matrices: 0, tallies: BTreeMap::new(), disagreements: Vec::new() }
    }

    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }

    /// Append a report covering the index range that follows this one.
    pub fn merge(mut self, other: AgreementReport) -> AgreementReport {
        self.matrices += other.matrices;
        for (k, t) in &other.tallies {
            self.tallies.entry(k.clone()).or_default().merge(t);
        }
        self.disagreements.extend(other.disagreements);
        self
    }

    pub fn to_json(&self) -> Value {
        let tallies: serde_json::Map<String, Value> = self
            .tallies
            .iter()
            .map(|(k, t)| {
                (
                    k.clone(),
                    json!({
                        "predicate_true": t.predicate_true,
                        "oracle_nonempty": t.oracle_nonempty,
                        "disagreements": t.disagreements,
                    }),
                )
            })
            .collect();
        json!({
            "p": self.p,
            "m": self.m,
            "n": self.n,
            "matrices": self.matrices,
            "tallies": tallies,
            "disagreements": self.disagreements.iter().map(|d| json!({
                "index": d.index,
                "matrix": matrix_to_json(&d.matrix),
                "check": d.check,
            })).collect::<Vec<_>>(),
        })
    }
}

struct Sweep<'a> {
    space: &'a AllMatrices,
    n: u32,
}

struct Tracker<'a> {
    report: &'a mut AgreementReport,
    index: usize,
    matrix: &'a Matrix,
}

impl Tracker<'_> {
    fn tally(&mut self, key: &str, predicate: bool, oracle: bool) {
        let t = self.report.tallies.entry(key.to_string()).or_default();
        t.predicate_true += predicate as usize;
        t.oracle_nonempty += oracle as usize;
        if predicate != oracle {
            t.disagreements += 1;
            self.fail(format!("{key}: predicate {predicate}, oracle {oracle}"));
        }
    }

    fn require(&mut self, ok: bool, check: impl Into<String>) {
        if !ok {
            self.fail(check.into());
        }
    }

    fn fail(&mut self, check: String) {
        self.report.disagreements.push(Disagreement {
            index: self.index,
            matrix: self.matrix.clone(),
            check,
        });
    }
}

impl Sweep<'_> {
    fn solutions(&self, a: &Matrix, spec: &EquationSpec) -> Vec<Matrix> {
        self.space.iter().filter(|x| satisfies(a, x, spec)).collect()
    }

    fn run(&self, range: Range<usize>, report: &mut AgreementReport) -> Result<()> {
        for index in range {
            let a = self.space.nth(index);
            report.matrices += 1;
            self.check_matrix(index, &a, report)?;
        }
        Ok(())
    }

    fn check_matrix(&self, index: usize, a: &Matrix, report: &mut AgreementReport) -> Result<()> {
        let profile = existence_profile(a, self.n)?;
        let mut t = Tracker { report, index, matrix: a };

        let mut unique = BTreeMap::new();
        for kind in InverseKind::ALL {
            let system = match kind {
                InverseKind::Core => EquationSpec::CoreThree,
                InverseKind::DualCore => EquationSpec::DualThree,
                other => other.defining_system(),
            };
            let sols = self.solutions(a, &system);
            let predicate = match kind {
                InverseKind::Inner13 => profile.has13,
                InverseKind::Inner14 => profile.has14,
                InverseKind::Group => profile.has_group,
                InverseKind::MoorePenrose => profile.has_mp,
                InverseKind::Core => profile.has_core,
                InverseKind::DualCore => profile.has_dual_core,
            };
            t.tally(kind.name(), predicate, !sols.is_empty());

            let formula = kind.compute(a)?;
            t.require(formula.is_some() == predicate, format!("{}: formula presence", kind.name()));
            if let Some(x) = &formula {
                t.require(sols.contains(x), format!("{}: formula output not a solution", kind.name()));
            }
            if kind != InverseKind::Inner13 && kind != InverseKind::Inner14 {
                t.require(sols.len() <= 1, format!("{}: {} solutions", kind.name(), sols.len()));
                t.require(
                    sols.first() == formula.as_ref(),
                    format!("{}: oracle singleton differs from formula", kind.name()),
                );
                unique.insert(kind, sols.first().cloned());
            }
            let five = match kind {
                InverseKind::Core => Some(EquationSpec::CoreFive),
                InverseKind::DualCore => Some(EquationSpec::DualFive),
                _ => None,
            };
            if let Some(five) = five {
                t.require(
                    self.solutions(a, &five) == sols,
                    format!("{}: five vs three equations", kind.name()),
                );
            }
        }

        t.require(profile.core_by_powers == profile.has_core, "core: powers criterion");
        t.require(profile.dual_core_by_powers == profile.has_dual_core, "dualcore: powers criterion");
        t.require(profile.mp_by_one_sided == profile.has_mp, "mp: one-sided criterion");
        let both = profile.has_core && profile.has_dual_core;
        t.require(both == (profile.has_mp && profile.has_group), "coexistence: MP and group");
        t.require(both == (profile.mu.is_some() && profile.nu.is_some()), "coexistence: witnesses");
        t.require(both == profile.coexistence_by_adjoint_powers, "coexistence: adjoint powers");

        let bundle = coexistence_bundle(a, self.n)?;
        t.require(bundle.is_some() == both, "bundle presence");
        if let Some(b) = bundle {
            t.require(Some(&b.core) == unique[&InverseKind::Core].as_ref(), "bundle core");
            t.require(Some(&b.dual_core) == unique[&InverseKind::DualCore].as_ref(), "bundle dual core");
            t.require(Some(&b.mp) == unique[&InverseKind::MoorePenrose].as_ref(), "bundle mp");
            t.require(Some(&b.group) == unique[&InverseKind::Group].as_ref(), "bundle group");
        }

        let oracle_core = unique[&InverseKind::Core].is_some();
        let oracle_dual = unique[&InverseKind::DualCore].is_some();
        let oracle_mp = unique[&InverseKind::MoorePenrose].is_some();
        let decomp = check_decompositions(a, self.n)?;
        t.require(decomp.consistent, "decompositions: statements disagree");
        t.tally("decompositions", decomp.verdict, oracle_core && oracle_dual);
        let decomp_one = check_decompositions(a, 1)?;
        t.require(decomp_one.consistent, "decompositions n=1: statements disagree");
        t.tally("decompositions_n1", decomp_one.verdict, oracle_mp);
        let triples_core = check_factorization_triples(a, CoreMode::Core)?.pass();
        t.tally("triples_core", triples_core, oracle_core);
        let triples_dual = check_factorization_triples(a, CoreMode::Dual)?.pass();
        t.tally("triples_dual", triples_dual, oracle_dual);
        Ok(())
    }
}

fn sweep_space(p: u64, m: usize, budget: u128) -> Result<AllMatrices> {
    let field = FieldDescriptor::prime(p)?;
    let per_side = count_matrices(p, m, m);
    let needed = per_side.saturating_mul(per_side);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    AllMatrices::new(field, m, m, budget)
}

fn check_sweep_exponent(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Exponent { min: 2, got: n });
    }
    Ok(())
}

/// Sweep the matrices whose lexicographic indices fall in `range`.
pub fn agreement_on_range(
    p: u64,
    m: usize,
    n: u32,
    range: Range<usize>,
    budget: u128,
) -> Result<AgreementReport> {
    check_sweep_exponent(n)?;
    let space = sweep_space(p, m, budget)?;
    let range = range.start.min(space.len())..range.end.min(space.len());
    let mut report = AgreementReport::empty(p, m, n);
    Sweep { space: &space, n }.run(range, &mut report)?;
    Ok(report)
}

/// Single-threaded sweep over every `m x m` matrix of `GF(p)`.
pub fn exhaustive_agreement(p: u64, m: usize, n: u32, budget: u128) -> Result<AgreementReport> {
    agreement_on_range(p, m, n, 0..usize::MAX, budget)
}

/// The same sweep split into `chunks` index ranges run on the rayon pool.
pub fn exhaustive_agreement_parallel(
    p: u64,
    m: usize,
    n: u32,
    budget: u128,
    chunks: usize,
) -> Result<AgreementReport> {
    check_sweep_exponent(n)?;
    let space = sweep_space(p, m, budget)?;
    let total = space.len();
    let chunks = chunks.max(1);
    let step = total.div_ceil(chunks).max(1);
    let ranges: Vec<Range<usize>> =
        (0..total).step_by(step).map(|s| s..(s + step).min(total)).collect();
    let parts = ranges
        .into_par_iter()
        .map(|range| {
            let mut report = AgreementReport::empty(p, m, n);
            Sweep { space: &space, n }.run(range, &mut report)?;
            Ok(report)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().fold(AgreementReport::empty(p, m, n), AgreementReport::merge))
}
