//! Existence criteria and closed forms for the six generalized inverses,
//! all read off the standard factorization `A = B C` (rank `r`).
//!
//! | inverse  | exists iff                        | formula                              |
//! |----------|-----------------------------------|--------------------------------------|
//! | {1,3}    | `A* B` left invertible (`mu1`)     | `(B mu1)*`                           |
//! | {1,4}    | `C A*` right invertible (`nu1`)    | `(nu1 C)*`                           |
//! | group    | `C B` invertible                  | `B (CB)^-2 C`                        |
//! | MP       | `B* B`, `C C*` invertible         | `C* (CC*)^-1 (B*B)^-1 B*`            |
//! | core     | {1,3} and group                   | `B (CB)^-1 (B*B)^-1 B*`              |
//! | dual     | {1,4} and group                   | `C* (CC*)^-1 (CB)^-1 C`              |
//!
//! Predicates are evaluated from ranks and solver success, never by trying
//! a formula and catching the failure.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factorization::{full_rank_factorize, RankFactorization};
use crate::linalg::{matrix_to_json, Matrix};
use crate::verify::EquationSpec;

/// The standard factorization with the products every criterion reuses.
#[derive(Clone, Debug)]
pub struct Factored {
    pub a: Matrix,
    pub a_star: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub b_star: Matrix,
    pub c_star: Matrix,
    pub cb: Matrix,
}

impl Factored {
    pub fn new(a: &Matrix) -> Self {
        Factored::from_factorization(&full_rank_factorize(a))
    }

    pub fn from_factorization(f: &RankFactorization) -> Self {
        let (b, c) = (f.left().clone(), f.right().clone());
        let cb = if f.matrix().is_square() { &c * &b } else { Matrix::zeros(b.field(), 0, 0) };
        Factored {
            a: f.matrix().clone(),
            a_star: f.matrix().star(),
            b_star: b.star(),
            c_star: c.star(),
            b,
            c,
            cb,
        }
    }

    pub fn rank(&self) -> usize {
        self.b.cols()
    }

    /// `A* B`.
    pub fn a_star_b(&self) -> Matrix {
        &self.a_star * &self.b
    }

    /// `C A*`.
    pub fn c_a_star(&self) -> Matrix {
        &self.c * &self.a_star
    }

    /// `(A*)^n B`.
    pub fn star_power_b(&self, n: u32) -> Matrix {
        &self.a_star.pow(n) * &self.b
    }

    /// `C (A*)^n`.
    pub fn c_star_power(&self, n: u32) -> Matrix {
        &self.c * &self.a_star.pow(n)
    }

    pub fn gram_b(&self) -> Matrix {
        &self.b_star * &self.b
    }

    pub fn gram_c(&self) -> Matrix {
        &self.c * &self.c_star
    }
}

fn is_left_invertible(m: &Matrix) -> bool {
    m.rank() == m.cols()
}

fn is_right_invertible(m: &Matrix) -> bool {
    m.rank() == m.rows()
}

fn is_invertible(m: &Matrix) -> bool {
    m.is_square() && m.rank() == m.rows()
}

fn check_exponent(n: u32, min: u32) -> Result<()> {
    if n < min {
        Err(Error::Exponent { min, got: n })
    } else {
        Ok(())
    }
}

/// {1,3}-inverse `X = (B mu1)*` where `mu1 (A* B) = I`.
pub fn inv13(a: &Matrix) -> Option<Matrix> {
    inv13_factored(&Factored::new(a))
}

fn inv13_factored(f: &Factored) -> Option<Matrix> {
    let mu1 = f.a_star_b().left_inverse()?;
    let x = (&f.b * &mu1).star();
    // X* A* A = A characterizes {1,3}-inverses.
    assert_eq!(&(&x.star() * &f.a_star) * &f.a, f.a, "{{1,3}} construction");
    Some(x)
}

/// {1,4}-inverse `X = (nu1 C)*` where `(C A*) nu1 = I`.
pub fn inv14(a: &Matrix) -> Option<Matrix> {
    inv14_factored(&Factored::new(a))
}

fn inv14_factored(f: &Factored) -> Option<Matrix> {
    let nu1 = f.c_a_star().right_inverse()?;
    let x = (&nu1 * &f.c).star();
    // A A* X* = A characterizes {1,4}-inverses.
    assert_eq!(&(&f.a * &f.a_star) * &x.star(), f.a, "{{1,4}} construction");
    Some(x)
}

pub fn group_inverse(a: &Matrix) -> Result<Option<Matrix>> {
    a.require_square()?;
    Ok(group_factored(&Factored::new(a)))
}

fn group_factored(f: &Factored) -> Option<Matrix> {
    let cb_inv = f.cb.inverse()?;
    Some(&(&f.b * &(&cb_inv * &cb_inv)) * &f.c)
}

pub fn mp_inverse(a: &Matrix) -> Option<Matrix> {
    mp_factored(&Factored::new(a))
}

fn mp_factored(f: &Factored) -> Option<Matrix> {
    let gb_inv = f.gram_b().inverse()?;
    let gc_inv = f.gram_c().inverse()?;
    Some(&(&(&f.c_star * &gc_inv) * &gb_inv) * &f.b_star)
}

pub fn core_inverse(a: &Matrix) -> Result<Option<Matrix>> {
    a.require_square()?;
    Ok(core_factored(&Factored::new(a)))
}

fn core_factored(f: &Factored) -> Option<Matrix> {
    if !is_left_invertible(&f.a_star_b()) {
        return None;
    }
    let cb_inv = f.cb.inverse()?;
    // rank(A* B) = rank(C* B* B) = rank(B* B), so the Gram matrix inverts.
    let gb_inv = f.gram_b().inverse().expect("B*B invertible when A*B is left invertible");
    Some(&(&(&f.b * &cb_inv) * &gb_inv) * &f.b_star)
}

pub fn dual_core_inverse(a: &Matrix) -> Result<Option<Matrix>> {
    a.require_square()?;
    Ok(dual_core_factored(&Factored::new(a)))
}

fn dual_core_factored(f: &Factored) -> Option<Matrix> {
    if !is_right_invertible(&f.c_a_star()) {
        return None;
    }
    let cb_inv = f.cb.inverse()?;
    let gc_inv = f.gram_c().inverse().expect("CC* invertible when CA* is right invertible");
    Some(&(&(&f.c_star * &gc_inv) * &cb_inv) * &f.c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreMode {
    Core,
    Dual,
}

/// Core inverse as `A# A A(1,3)`, or the dual core inverse as `A(1,4) A A#`.
pub fn core_via_composition(a: &Matrix, mode: CoreMode) -> Result<Option<Matrix>> {
    a.require_square()?;
    let f = Factored::new(a);
    let Some(group) = group_factored(&f) else {
        return Ok(None);
    };
    Ok(match mode {
        CoreMode::Core => inv13_factored(&f).map(|x| &(&group * a) * &x),
        CoreMode::Dual => inv14_factored(&f).map(|x| &(&x * a) * &group),
    })
}

/// Core, dual core, Moore-Penrose and group inverses together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseBundle {
    pub core: Matrix,
    pub dual_core: Matrix,
    pub mp: Matrix,
    pub group: Matrix,
}

impl InverseBundle {
    pub fn to_json(&self) -> Value {
        json!({
            "core": matrix_to_json(&self.core),
            "dual_core": matrix_to_json(&self.dual_core),
            "mp": matrix_to_json(&self.mp),
            "group": matrix_to_json(&self.group),
        })
    }
}

/// Evaluate the coexistence formulas for given witnesses
/// `mu (A*)^n B = I = C (A*)^n nu`:
///
/// ```text
/// core  = A^(n-1) mu* B*
/// dual  = C* nu* A^(n-1)
/// MP    = C* nu* A^(2n-1) mu* B*     (= dual A core)
/// group = (A^(n-1) mu* B*)^2 A
/// ```
///
/// Any pair of valid witnesses gives the same four matrices. The MP form
/// needs the starred witness `(nu C)*`: with `nu C` itself the product
/// depends on the choice of `nu` and fails the Penrose equations (e.g.
/// `A = [[0, 0], [1, 1]]` over GF(3)).
pub fn bundle_from_witnesses(f: &Factored, n: u32, mu: &Matrix, nu: &Matrix) -> InverseBundle {
    let a_pow = f.a.pow(n - 1);
    let core = &(&a_pow * &mu.star()) * &f.b_star;
    let dual_core = &(&f.c_star * &nu.star()) * &a_pow;
    let mp = &(&(&(&f.c_star * &nu.star()) * &f.a.pow(2 * n - 1)) * &mu.star()) * &f.b_star;
    let group = &(&core * &core) * &f.a;
    InverseBundle { core, dual_core, mp, group }
}

/// Witnesses `mu`, `nu` by the deterministic solver, then all four inverses.
pub fn coexistence_bundle(a: &Matrix, n: u32) -> Result<Option<InverseBundle>> {
    a.require_square()?;
    check_exponent(n, 2)?;
    let f = Factored::new(a);
    let Some(mu) = f.star_power_b(n).left_inverse() else {
        return Ok(None);
    };
    let Some(nu) = f.c_star_power(n).right_inverse() else {
        return Ok(None);
    };
    Ok(Some(bundle_from_witnesses(&f, n, &mu, &nu)))
}

/// Every existence criterion, each evaluated on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceProfile {
    pub n: u32,
    pub rank: usize,
    /// `A* B` left invertible.
    pub has13: bool,
    /// `C A*` right invertible.
    pub has14: bool,
    /// `C B` invertible.
    pub has_group: bool,
    /// `B* B` and `C C*` invertible.
    pub has_mp: bool,
    /// {1,3} and group.
    pub has_core: bool,
    /// {1,4} and group.
    pub has_dual_core: bool,
    pub cb_invertible: bool,
    /// `(A*)^n B` and `C B` both left invertible.
    pub core_by_powers: bool,
    /// `C (A*)^n` and `C B` both right invertible.
    pub dual_core_by_powers: bool,
    /// `A^n C*` left invertible and `B* A^n` right invertible.
    pub coexistence_by_adjoint_powers: bool,
    /// `A* B` left invertible and `C A*` right invertible.
    pub mp_by_one_sided: bool,
    /// Left inverse of `(A*)^n B`.
    pub mu: Option<Matrix>,
    /// Right inverse of `C (A*)^n`.
    pub nu: Option<Matrix>,
}

impl ExistenceProfile {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "rank": self.rank,
            "has13": self.has13,
            "has14": self.has14,
            "hasGroup": self.has_group,
            "hasMP": self.has_mp,
            "hasCore": self.has_core,
            "hasDualCore": self.has_dual_core,
            "cb_invertible": self.cb_invertible,
            "core_by_powers": self.core_by_powers,
            "dual_core_by_powers": self.dual_core_by_powers,
            "coexistence_by_adjoint_powers": self.coexistence_by_adjoint_powers,
            "mp_by_one_sided": self.mp_by_one_sided,
            "mu": self.mu.as_ref().map(matrix_to_json),
            "nu": self.nu.as_ref().map(matrix_to_json),
        })
    }
}

pub fn existence_profile(a: &Matrix, n: u32) -> Result<ExistenceProfile> {
    a.require_square()?;
    check_exponent(n, 2)?;
    let f = Factored::new(a);
    let has13 = is_left_invertible(&f.a_star_b());
    let has14 = is_right_invertible(&f.c_a_star());
    let cb_invertible = is_invertible(&f.cb);
    let has_mp = is_invertible(&f.gram_b()) && is_invertible(&f.gram_c());

    let star_power_b = f.star_power_b(n);
    let c_star_power = f.c_star_power(n);
    let core_by_powers = is_left_invertible(&star_power_b) && is_left_invertible(&f.cb);
    let dual_core_by_powers = is_right_invertible(&c_star_power) && is_right_invertible(&f.cb);

    let a_pow = f.a.pow(n);
    let coexistence_by_adjoint_powers =
        is_left_invertible(&(&a_pow * &f.c_star)) && is_right_invertible(&(&f.b_star * &a_pow));

    Ok(ExistenceProfile {
        n,
        rank: f.rank(),
        has13,
        has14,
        has_group: cb_invertible,
        has_mp,
        has_core: has13 && cb_invertible,
        has_dual_core: has14 && cb_invertible,
        cb_invertible,
        core_by_powers,
        dual_core_by_powers,
        coexistence_by_adjoint_powers,
        mp_by_one_sided: has13 && has14,
        mu: star_power_b.left_inverse(),
        nu: c_star_power.right_inverse(),
    })
}

/// The six single inverses, as selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InverseKind {
    Inner13,
    Inner14,
    Group,
    MoorePenrose,
    Core,
    DualCore,
}

impl InverseKind {
    pub const ALL: [InverseKind; 6] = [
        InverseKind::Inner13,
        InverseKind::Inner14,
        InverseKind::Group,
        InverseKind::MoorePenrose,
        InverseKind::Core,
        InverseKind::DualCore,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InverseKind::Inner13 => "13",
            InverseKind::Inner14 => "14",
            InverseKind::Group => "group",
            InverseKind::MoorePenrose => "mp",
            InverseKind::Core => "core",
            InverseKind::DualCore => "dualcore",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        InverseKind::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn needs_square(self) -> bool {
        matches!(self, InverseKind::Group | InverseKind::Core | InverseKind::DualCore)
    }

    /// The full defining system for this inverse.
    pub fn defining_system(self) -> EquationSpec {
        match self {
            InverseKind::Inner13 => EquationSpec::penrose(&[1, 3]),
            InverseKind::Inner14 => EquationSpec::penrose(&[1, 4]),
            InverseKind::Group => EquationSpec::GroupSystem,
            InverseKind::MoorePenrose => EquationSpec::penrose(&[1, 2, 3, 4]),
            InverseKind::Core => EquationSpec::CoreFive,
            InverseKind::DualCore => EquationSpec::DualFive,
        }
    }

    pub fn compute(self, a: &Matrix) -> Result<Option<Matrix>> {
        if self.needs_square() {
            a.require_square()?;
        }
        let f = Factored::new(a);
        Ok(match self {
            InverseKind::Inner13 => inv13_factored(&f),
            InverseKind::Inner14 => inv14_factored(&f),
            InverseKind::Group => group_factored(&f),
            InverseKind::MoorePenrose => mp_factored(&f),
            InverseKind::Core => core_factored(&f),
            InverseKind::DualCore => dual_core_factored(&f),
        })
    }

    /// The first failing criterion, or `None` when the inverse exists.
    pub fn missing_reason(self, a: &Matrix) -> Result<Option<&'static str>> {
        if self.needs_square() {
            a.require_square()?;
        }
        let f = Factored::new(a);
        let no13 = || !is_left_invertible(&f.a_star_b());
        let no14 = || !is_right_invertible(&f.c_a_star());
        let no_group = || !is_invertible(&f.cb);
        Ok(match self {
            InverseKind::Inner13 => no13().then_some("A*B not left invertible"),
            InverseKind::Inner14 => no14().then_some("CA* not right invertible"),
            InverseKind::Group => no_group().then_some("CB singular"),
            InverseKind::MoorePenrose => {
                if !is_invertible(&f.gram_b()) {
                    Some("B*B singular")
                } else if !is_invertible(&f.gram_c()) {
                    Some("CC* singular")
                } else {
                    None
                }
            }
            InverseKind::Core => {
                if no13() {
                    Some("A*B not left invertible")
                } else if no_group() {
                    Some("CB singular")
                } else {
                    None
                }
            }
            InverseKind::DualCore => {
                if no14() {
                    Some("CA* not right invertible")
                } else if no_group() {
                    Some("CB singular")
                } else {
                    None
                }
            }
        })
    }
}

/// Why the coexistence bundle is absent, if it is.
pub fn bundle_missing_reason(a: &Matrix, n: u32) -> Result<Option<&'static str>> {
    a.require_square()?;
    check_exponent(n, 2)?;
    let f = Factored::new(a);
    Ok(if !is_left_invertible(&f.star_power_b(n)) {
        Some("(A*)^nB not left invertible")
    } else if !is_right_invertible(&f.c_star_power(n)) {
        Some("C(A*)^n not right invertible")
    } else {
        None
    })
}
