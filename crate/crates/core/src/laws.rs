//! Exhaustive law checking for the min-plus integers and flat mnesors.
//!
//! Every law is evaluated over all values whose grades fall in a bounded
//! window. Values are enumerated smallest first (`ZERO`, `ALL`, then graded
//! mnesors by increasing `|grade|`), so the first failing tuple is also a
//! minimal counterexample. Enumeration of the outermost variable is spread
//! over the rayon pool; `find_map_first` keeps the result order-stable.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::AlgebraError;
use crate::minplus::FlatNumber;
use crate::mnesor::Mnesor;

/// Largest number of grades a window may span (`[-32, 32]`).
pub const MAX_WINDOW_GRADES: u64 = 65;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("empty grade window [{min}, {max}]")]
    Empty { min: i64, max: i64 },
    #[error("grade window [{min}, {max}] spans more than {MAX_WINDOW_GRADES} grades")]
    TooWide { min: i64, max: i64 },
}

/// An inclusive range of integer grades.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GradeWindow {
    pub min: i64,
    pub max: i64,
}

impl GradeWindow {
    pub fn new(min: i64, max: i64) -> Result<Self, WindowError> {
        if min > max {
            return Err(WindowError::Empty { min, max });
        }
        if max.abs_diff(min) >= MAX_WINDOW_GRADES || min == i64::MIN {
            return Err(WindowError::TooWide { min, max });
        }
        Ok(GradeWindow { min, max })
    }

    /// Grades in the window, ordered by `|g|` with positives first.
    pub fn grades(&self) -> Vec<FlatNumber> {
        let mut grades: Vec<i64> = (self.min..=self.max).collect();
        grades.sort_by_key(|g| (g.unsigned_abs(), *g < 0));
        grades
            .into_iter()
            .map(|g| FlatNumber::new(g).expect("window excludes i64::MIN"))
            .collect()
    }

    /// Every canonical mnesor whose grade (if any) lies in the window.
    pub fn mnesors(&self) -> Vec<Mnesor> {
        let mut out = vec![Mnesor::Zero, Mnesor::All];
        for g in self.grades() {
            out.push(Mnesor::Pst(g));
            out.push(Mnesor::Ngt(g));
        }
        out
    }
}

impl fmt::Display for GradeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.min, self.max)
    }
}

/// The operations a law check exercises.
///
/// Defaults delegate to the canonical tables on [`Mnesor`]; overriding a
/// single method lets a test confirm the checker catches a broken table.
pub trait MnesorAlgebra: Sync {
    fn add(&self, x: Mnesor, y: Mnesor) -> Mnesor {
        x.madd(y)
    }
    fn mul(&self, x: Mnesor, y: Mnesor) -> Mnesor {
        x.mmul(y)
    }
    fn scale(&self, x: Mnesor, l: FlatNumber) -> Result<Mnesor, AlgebraError> {
        x.smul(l)
    }
    fn conj(&self, x: Mnesor) -> Mnesor {
        x.conj()
    }
    fn leq(&self, x: Mnesor, y: Mnesor) -> bool {
        x.mleq(y)
    }
}

/// The canonical algebra implemented by [`Mnesor`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Canonical;

impl MnesorAlgebra for Canonical {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub name: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    /// Number of tuples in the enumeration domain.
    pub cases: u64,
    /// Variable bindings of the first failing tuple, in mnesor notation.
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub window: GradeWindow,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| !l.passed)
    }

    pub fn get(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.laws.iter().map(|l| l.name.len()).max().unwrap_or(0);
        for law in &self.laws {
            let status = if law.passed { "pass" } else { "FAIL" };
            write!(f, "{status}  {:<width$}  {}", law.name, law.statement)?;
            if let Some(cx) = &law.counterexample {
                write!(f, "\n      counterexample: {cx}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} laws over grades {}: {} passed, {} failed",
            self.laws.len(),
            self.window,
            self.laws.len() - failed,
            failed
        )
    }
}

type Witness = Option<String>;

fn bind<T: fmt::Display>(pairs: &[(&str, T)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k} = {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn forall1<T, F>(xs: &[T], pred: F) -> Witness
where
    T: Copy + Sync,
    F: Fn(T) -> Witness + Sync,
{
    xs.par_iter().find_map_first(|&x| pred(x))
}

fn forall2<T, U, F>(xs: &[T], ys: &[U], pred: F) -> Witness
where
    T: Copy + Sync,
    U: Copy + Sync,
    F: Fn(T, U) -> Witness + Sync,
{
    xs.par_iter()
        .find_map_first(|&x| ys.iter().find_map(|&y| pred(x, y)))
}

fn forall3<T, U, V, F>(xs: &[T], ys: &[U], zs: &[V], pred: F) -> Witness
where
    T: Copy + Sync,
    U: Copy + Sync,
    V: Copy + Sync,
    F: Fn(T, U, V) -> Witness + Sync,
{
    xs.par_iter().find_map_first(|&x| {
        ys.iter()
            .find_map(|&y| zs.iter().find_map(|&z| pred(x, y, z)))
    })
}

/// `Some(witness)` when `holds` is false.
fn check(holds: bool, witness: impl FnOnce() -> String) -> Witness {
    if holds {
        None
    } else {
        Some(witness())
    }
}

/// Compares two fallible results; an overflow on either side is a failure.
fn same(
    lhs: Result<Mnesor, AlgebraError>,
    rhs: Result<Mnesor, AlgebraError>,
    witness: impl FnOnce() -> String,
) -> Witness {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) if a == b => None,
        (a, b) => Some(format!("{} (lhs {:?}, rhs {:?})", witness(), a, b)),
    }
}

struct Builder {
    laws: Vec<LawResult>,
}

impl Builder {
    fn law(&mut self, name: &'static str, statement: &'static str, cases: u64, witness: Witness) {
        self.laws.push(LawResult {
            name,
            statement,
            passed: witness.is_none(),
            cases,
            counterexample: witness,
        });
    }
}

fn n(len: usize) -> u64 {
    len as u64
}

/// Checks every mnesor law over the canonical algebra.
pub fn check_laws(window: GradeWindow) -> LawReport {
    check_laws_with(&Canonical, window)
}

/// Checks every mnesor law over an arbitrary implementation of the operations.
pub fn check_laws_with<A: MnesorAlgebra>(alg: &A, window: GradeWindow) -> LawReport {
    let xs = window.mnesors();
    let ls = window.grades();
    let nonneg: Vec<FlatNumber> = ls.iter().copied().filter(|l| l.grade() >= 0).collect();
    let positive: Vec<FlatNumber> = ls.iter().copied().filter(|l| l.grade() > 0).collect();
    let bases = Mnesor::BASES;
    let (nx, nl) = (n(xs.len()), n(ls.len()));
    let mut b = Builder { laws: Vec::new() };

    // Commutative monoid with idempotent addition.
    b.law(
        "add_associative",
        "(x + y) + z = x + (y + z)",
        nx * nx * nx,
        forall3(&xs, &xs, &xs, |x, y, z| {
            check(
                alg.add(alg.add(x, y), z) == alg.add(x, alg.add(y, z)),
                || bind(&[("x", x), ("y", y), ("z", z)]),
            )
        }),
    );
    b.law(
        "add_commutative",
        "x + y = y + x",
        nx * nx,
        forall2(&xs, &xs, |x, y| {
            check(alg.add(x, y) == alg.add(y, x), || {
                bind(&[("x", x), ("y", y)])
            })
        }),
    );
    b.law(
        "add_zero_identity",
        "x + ZERO = x",
        nx,
        forall1(&xs, |x| {
            check(
                alg.add(x, Mnesor::Zero) == x && alg.add(Mnesor::Zero, x) == x,
                || bind(&[("x", x)]),
            )
        }),
    );
    b.law(
        "add_idempotent",
        "x + x = x",
        nx,
        forall1(&xs, |x| check(alg.add(x, x) == x, || bind(&[("x", x)]))),
    );

    // Semimodule axioms.
    b.law(
        "scale_unit",
        "x(0) = x",
        nx,
        forall1(&xs, |x| {
            same(alg.scale(x, FlatNumber::ONE), Ok(x), || bind(&[("x", x)]))
        }),
    );
    b.law(
        "scale_distributes_over_add",
        "(x + y)λ = xλ + yλ",
        nx * nx * nl,
        forall3(&xs, &xs, &ls, |x, y, l| {
            let rhs = alg
                .scale(x, l)
                .and_then(|xl| alg.scale(y, l).map(|yl| alg.add(xl, yl)));
            same(alg.scale(alg.add(x, y), l), rhs, || {
                format!("{}, λ = {l}", bind(&[("x", x), ("y", y)]))
            })
        }),
    );
    b.law(
        "scale_composes",
        "(xλ)μ = x(λ ⊗ μ)",
        nx * nl * nl,
        forall3(&xs, &ls, &ls, |x, l, m| {
            let lhs = alg.scale(x, l).and_then(|xl| alg.scale(xl, m));
            let rhs = l.fmul(m).and_then(|lm| alg.scale(x, lm));
            same(lhs, rhs, || format!("x = {x}, λ = {l}, μ = {m}"))
        }),
    );
    b.law(
        "scale_of_flat_sum",
        "x(λ ⊕ μ) = xλ + xμ",
        nx * nl * nl,
        forall3(&xs, &ls, &ls, |x, l, m| {
            let rhs = alg
                .scale(x, l)
                .and_then(|xl| alg.scale(x, m).map(|xm| alg.add(xl, xm)));
            same(alg.scale(x, l.fadd(m)), rhs, || {
                format!("x = {x}, λ = {l}, μ = {m}")
            })
        }),
    );

    // Conjugation.
    b.law(
        "conj_involutive",
        "conj(conj(x)) = x",
        nx,
        forall1(&xs, |x| {
            check(alg.conj(alg.conj(x)) == x, || bind(&[("x", x)]))
        }),
    );
    b.law(
        "conj_scaling_compatible",
        "conj(xλ) = conj(x)λ⁻¹",
        nx * nl,
        forall2(&xs, &ls, |x, l| {
            same(
                alg.scale(x, l).map(|xl| alg.conj(xl)),
                alg.scale(alg.conj(x), l.finv()),
                || format!("x = {x}, λ = {l}"),
            )
        }),
    );

    // Internal multiplication.
    b.law(
        "mul_de_morgan",
        "x × y = conj(conj(x) + conj(y))",
        nx * nx,
        forall2(&xs, &xs, |x, y| {
            check(
                alg.mul(x, y) == alg.conj(alg.add(alg.conj(x), alg.conj(y))),
                || bind(&[("x", x), ("y", y)]),
            )
        }),
    );
    b.law(
        "mul_associative",
        "(x × y) × z = x × (y × z)",
        nx * nx * nx,
        forall3(&xs, &xs, &xs, |x, y, z| {
            check(
                alg.mul(alg.mul(x, y), z) == alg.mul(x, alg.mul(y, z)),
                || bind(&[("x", x), ("y", y), ("z", z)]),
            )
        }),
    );
    b.law(
        "mul_commutative",
        "x × y = y × x",
        nx * nx,
        forall2(&xs, &xs, |x, y| {
            check(alg.mul(x, y) == alg.mul(y, x), || {
                bind(&[("x", x), ("y", y)])
            })
        }),
    );
    b.law(
        "mul_idempotent",
        "x × x = x",
        nx,
        forall1(&xs, |x| check(alg.mul(x, x) == x, || bind(&[("x", x)]))),
    );
    b.law(
        "mul_scaling_compatible",
        "(x × y)λ = (xλ) × (yλ)",
        nx * nx * nl,
        forall3(&xs, &xs, &ls, |x, y, l| {
            let rhs = alg
                .scale(x, l)
                .and_then(|xl| alg.scale(y, l).map(|yl| alg.mul(xl, yl)));
            same(alg.scale(alg.mul(x, y), l), rhs, || {
                format!("{}, λ = {l}", bind(&[("x", x), ("y", y)]))
            })
        }),
    );
    b.law(
        "mul_absorbs_scaled_self",
        "x × (xλ) = xλ for λ ⪯ (0)",
        nx * n(nonneg.len()),
        forall2(&xs, &nonneg, |x, l| {
            let lhs = alg.scale(x, l).map(|xl| alg.mul(x, xl));
            same(lhs, alg.scale(x, l), || format!("x = {x}, λ = {l}"))
        }),
    );

    // Canonical form and the base rules.
    let mut rule7_scalars = ls.clone();
    if !rule7_scalars.contains(&FlatNumber::ONE) {
        rule7_scalars.push(FlatNumber::ONE);
    }
    b.law(
        "base_decomposition",
        "x = bλ for a base b in {PST, NGT, ALL, ZERO}",
        nx,
        forall1(&xs, |x| {
            let found = bases
                .iter()
                .any(|&base| rule7_scalars.iter().any(|&l| alg.scale(base, l) == Ok(x)));
            check(found, || bind(&[("x", x)]))
        }),
    );
    b.law(
        "conj_pst_is_ngt",
        "conj(PST) = NGT, conj(NGT) = PST",
        2,
        check(
            alg.conj(Mnesor::PST) == Mnesor::NGT && alg.conj(Mnesor::NGT) == Mnesor::PST,
            || "x = PST".to_string(),
        ),
    );
    b.law(
        "base_scaled_plus_conj",
        "xλ + conj(x) = conj(x) for base x, λ ≺ (0)",
        4 * n(positive.len()),
        forall2(&bases, &positive, |x, l| {
            let lhs = alg.scale(x, l).map(|xl| alg.add(xl, alg.conj(x)));
            same(lhs, Ok(alg.conj(x)), || format!("x = {x}, λ = {l}"))
        }),
    );
    b.law(
        "base_plus_conj_is_all",
        "x + conj(x) = ALL for base x",
        4,
        forall1(&bases, |x| {
            check(alg.add(x, alg.conj(x)) == Mnesor::All, || {
                bind(&[("x", x), ("conj(x)", alg.conj(x))])
            })
        }),
    );
    b.law(
        "add_all_absorbs",
        "x + ALL = ALL",
        nx,
        forall1(&xs, |x| {
            check(alg.add(x, Mnesor::All) == Mnesor::All, || bind(&[("x", x)]))
        }),
    );
    b.law(
        "mul_all_identity",
        "x × ALL = x",
        nx,
        forall1(&xs, |x| {
            check(alg.mul(x, Mnesor::All) == x, || bind(&[("x", x)]))
        }),
    );
    b.law(
        "mul_zero_annihilates",
        "x × ZERO = ZERO",
        nx,
        forall1(&xs, |x| {
            check(alg.mul(x, Mnesor::Zero) == Mnesor::Zero, || {
                bind(&[("x", x)])
            })
        }),
    );
    b.law(
        "base_times_conj_is_zero",
        "x × conj(x) = ZERO for base x",
        4,
        forall1(&bases, |x| {
            check(alg.mul(x, alg.conj(x)) == Mnesor::Zero, || {
                bind(&[("x", x), ("conj(x)", alg.conj(x))])
            })
        }),
    );
    b.law(
        "mul_scaled_selects_stronger",
        "(xλ) × (xμ) = x·max(λ, μ)",
        nx * nl * nl,
        forall3(&xs, &ls, &ls, |x, l, m| {
            let lhs = alg
                .scale(x, l)
                .and_then(|xl| alg.scale(x, m).map(|xm| alg.mul(xl, xm)));
            let strongest = if l.grade() >= m.grade() { l } else { m };
            same(lhs, alg.scale(x, strongest), || {
                format!("x = {x}, λ = {l}, μ = {m}")
            })
        }),
    );
    b.law(
        "zero_absorbs_scaling",
        "ZERO·λ = ZERO, ALL·λ = ALL",
        2 * nl,
        forall2(&[Mnesor::Zero, Mnesor::All], &ls, |x, l| {
            same(alg.scale(x, l), Ok(x), || format!("x = {x}, λ = {l}"))
        }),
    );

    // Order.
    b.law(
        "order_reflexive",
        "x ≤ x",
        nx,
        forall1(&xs, |x| check(alg.leq(x, x), || bind(&[("x", x)]))),
    );
    b.law(
        "order_antisymmetric",
        "x ≤ y and y ≤ x imply x = y",
        nx * nx,
        forall2(&xs, &xs, |x, y| {
            check(!(alg.leq(x, y) && alg.leq(y, x)) || x == y, || {
                bind(&[("x", x), ("y", y)])
            })
        }),
    );
    b.law(
        "order_transitive",
        "x ≤ y and y ≤ z imply x ≤ z",
        nx * nx * nx,
        forall3(&xs, &xs, &xs, |x, y, z| {
            check(!(alg.leq(x, y) && alg.leq(y, z)) || alg.leq(x, z), || {
                bind(&[("x", x), ("y", y), ("z", z)])
            })
        }),
    );
    b.law(
        "order_is_scaling",
        "x ≤ y iff x = yλ for some λ ⪯ (0)",
        nx * nx,
        forall2(&xs, &xs, |x, y| {
            let grade_gap = match (x.grade(), y.grade()) {
                (Some(gx), Some(gy)) => gx.grade().checked_sub(gy.grade()),
                _ => Some(0),
            };
            let witnessed = grade_gap
                .filter(|gap| *gap >= 0)
                .and_then(|gap| FlatNumber::new(gap).ok())
                .is_some_and(|l| alg.scale(y, l) == Ok(x));
            check(alg.leq(x, y) == witnessed, || bind(&[("x", x), ("y", y)]))
        }),
    );
    b.law(
        "order_monotone_in_scalar",
        "λ ⪯ μ implies xλ ≤ xμ",
        nx * nl * nl,
        forall3(&xs, &ls, &ls, |x, l, m| {
            if !l.fleq(m) {
                return None;
            }
            match (alg.scale(x, l), alg.scale(x, m)) {
                (Ok(xl), Ok(xm)) => check(alg.leq(xl, xm), || format!("x = {x}, λ = {l}, μ = {m}")),
                _ => Some(format!("x = {x}, λ = {l}, μ = {m} (overflow)")),
            }
        }),
    );

    // Reading the base rules for non-base operands would force
    // PST(+1) = NGT(+1): with x = PST(-1), λ = (+2) one gets
    // PST(+1) + NGT(+1) = NGT(+1), and with x = NGT(-1) the swapped sum is PST(+1).
    let x = Mnesor::Pst(FlatNumber::from(-1));
    let l = FlatNumber::from(2);
    let witness = match alg.scale(x, l) {
        Ok(xl) => {
            let forward = alg.add(xl, alg.conj(x));
            let backward = alg.add(alg.conj(x), xl);
            check(xl != alg.conj(x) && forward == backward, || {
                format!("x = {x}, λ = {l}: xλ + conj(x) = {forward}, conj(x) + xλ = {backward}")
            })
        }
        Err(_) => Some(format!("x = {x}, λ = {l} (overflow)")),
    };
    b.law(
        "non_base_rules_stay_distinct",
        "PST(+1) ≠ NGT(+1), and their sum does not depend on operand order",
        1,
        witness,
    );
    b.law(
        "opposed_tie_cases",
        "PSTλ + NGTλ = ALL and PSTλ × NGTλ = ZERO",
        nl,
        forall1(&ls, |l| {
            match (alg.scale(Mnesor::PST, l), alg.scale(Mnesor::NGT, l)) {
                (Ok(p), Ok(q)) => check(
                    alg.add(p, q) == Mnesor::All && alg.mul(p, q) == Mnesor::Zero,
                    || bind(&[("x", p), ("y", q)]),
                ),
                _ => Some(format!("λ = {l} (overflow)")),
            }
        }),
    );

    LawReport {
        window,
        laws: b.laws,
    }
}

/// Checks the min-plus semiring laws exhaustively over the window.
pub fn check_semiring_laws(window: GradeWindow) -> LawReport {
    let ls = window.grades();
    let nl = n(ls.len());
    let one = FlatNumber::ONE;
    let mut b = Builder { laws: Vec::new() };
    let f3 = |a: FlatNumber, c: FlatNumber, d: FlatNumber| format!("x = {a}, y = {c}, z = {d}");
    let f2 = |a: FlatNumber, c: FlatNumber| format!("x = {a}, y = {c}");

    b.law(
        "fadd_associative",
        "(x ⊕ y) ⊕ z = x ⊕ (y ⊕ z)",
        nl * nl * nl,
        forall3(&ls, &ls, &ls, |x, y, z| {
            check(x.fadd(y).fadd(z) == x.fadd(y.fadd(z)), || f3(x, y, z))
        }),
    );
    b.law(
        "fadd_commutative",
        "x ⊕ y = y ⊕ x",
        nl * nl,
        forall2(&ls, &ls, |x, y| check(x.fadd(y) == y.fadd(x), || f2(x, y))),
    );
    b.law(
        "fadd_idempotent",
        "x ⊕ x = x",
        nl,
        forall1(&ls, |x| check(x.fadd(x) == x, || format!("x = {x}"))),
    );
    b.law(
        "fmul_associative",
        "(x ⊗ y) ⊗ z = x ⊗ (y ⊗ z)",
        nl * nl * nl,
        forall3(&ls, &ls, &ls, |x, y, z| {
            let lhs = x.fmul(y).and_then(|xy| xy.fmul(z));
            let rhs = y.fmul(z).and_then(|yz| x.fmul(yz));
            check(lhs.is_ok() && lhs == rhs, || f3(x, y, z))
        }),
    );
    b.law(
        "fmul_commutative",
        "x ⊗ y = y ⊗ x",
        nl * nl,
        forall2(&ls, &ls, |x, y| {
            check(x.fmul(y).is_ok() && x.fmul(y) == y.fmul(x), || f2(x, y))
        }),
    );
    b.law(
        "fmul_identity",
        "x ⊗ (0) = x",
        nl,
        forall1(&ls, |x| {
            check(x.fmul(one) == Ok(x) && one.fmul(x) == Ok(x), || {
                format!("x = {x}")
            })
        }),
    );
    b.law(
        "fmul_distributes",
        "x ⊗ (y ⊕ z) = (x ⊗ y) ⊕ (x ⊗ z)",
        nl * nl * nl,
        forall3(&ls, &ls, &ls, |x, y, z| {
            let lhs = x.fmul(y.fadd(z));
            let rhs = x.fmul(y).and_then(|xy| x.fmul(z).map(|xz| xy.fadd(xz)));
            check(lhs.is_ok() && lhs == rhs, || f3(x, y, z))
        }),
    );
    b.law(
        "finv_inverse",
        "x ⊗ x⁻¹ = (0)",
        nl,
        forall1(&ls, |x| {
            check(x.fmul(x.finv()) == Ok(one), || format!("x = {x}"))
        }),
    );
    b.law(
        "finv_involutive",
        "(x⁻¹)⁻¹ = x",
        nl,
        forall1(&ls, |x| check(x.finv().finv() == x, || format!("x = {x}"))),
    );
    b.law(
        "fleq_total_order",
        "⪯ is reflexive, antisymmetric, transitive and total",
        nl * nl * nl,
        forall3(&ls, &ls, &ls, |x, y, z| {
            let ok = x.fleq(x)
                && (!(x.fleq(y) && y.fleq(x)) || x == y)
                && (!(x.fleq(y) && y.fleq(z)) || x.fleq(z))
                && (x.fleq(y) || y.fleq(x));
            check(ok, || f3(x, y, z))
        }),
    );
    b.law(
        "fleq_reverses_integers",
        "x ⪯ y iff y ≤ x as integers",
        nl * nl,
        forall2(&ls, &ls, |x, y| {
            check(x.fleq(y) == (y.grade() <= x.grade()), || f2(x, y))
        }),
    );

    LawReport {
        window,
        laws: b.laws,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_validation() {
        assert!(GradeWindow::new(5, 2).is_err());
        assert!(GradeWindow::new(-32, 32).is_ok());
        assert!(matches!(
            GradeWindow::new(-32, 33),
            Err(WindowError::TooWide { .. })
        ));
        assert!(GradeWindow::new(i64::MIN, i64::MIN).is_err());
    }

    #[test]
    fn enumeration_is_smallest_first() {
        let w = GradeWindow::new(-1, 2).unwrap();
        let grades: Vec<i64> = w.grades().iter().map(|g| g.grade()).collect();
        assert_eq!(grades, vec![0, 1, -1, 2]);
        let xs = w.mnesors();
        assert_eq!(
            &xs[..4],
            &[Mnesor::Zero, Mnesor::All, Mnesor::PST, Mnesor::NGT]
        );
        assert_eq!(xs.len(), 2 + 2 * 4);
    }

    #[test]
    fn acceptance_window_reports_the_inconsistent_laws() {
        // The stated law set has no non-trivial model; the canonical tables
        // violate exactly these three, with these minimal counterexamples.
        let report = check_laws(GradeWindow::new(-8, 8).unwrap());
        let failed: Vec<(&str, &str)> = report
            .failures()
            .map(|l| (l.name, l.counterexample.as_deref().unwrap()))
            .collect();
        assert_eq!(
            failed,
            vec![
                ("add_associative", "x = PST, y = NGT, z = PST(-1)"),
                ("mul_associative", "x = PST, y = NGT, z = PST(+1)"),
                (
                    "base_scaled_plus_conj",
                    "x = ALL, λ = (+1) (lhs Ok(All), rhs Ok(Zero))"
                ),
            ]
        );
    }

    #[test]
    fn degenerate_window_passes() {
        let report = check_laws(GradeWindow::new(0, 0).unwrap());
        assert!(report.all_passed(), "{report}");
        let report = check_semiring_laws(GradeWindow::new(0, 0).unwrap());
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn off_center_window_still_breaks_associativity() {
        // A tie meeting a softer third operand breaks associativity anywhere.
        let report = check_laws(GradeWindow::new(3, 9).unwrap());
        assert!(report.get("mul_de_morgan").unwrap().passed);
        assert!(report.get("order_monotone_in_scalar").unwrap().passed);
        assert!(!report.get("add_associative").unwrap().passed);
    }

    #[test]
    fn semiring_window_passes() {
        let report = check_semiring_laws(GradeWindow::new(-16, 16).unwrap());
        assert!(report.all_passed(), "{report}");
    }

    struct TieToZero;

    impl MnesorAlgebra for TieToZero {
        fn add(&self, x: Mnesor, y: Mnesor) -> Mnesor {
            match x.madd(y) {
                Mnesor::All if x.polarity().is_some() && y.polarity().is_some() => Mnesor::Zero,
                other => other,
            }
        }
    }

    #[test]
    fn corrupted_tie_case_is_caught() {
        let report = check_laws_with(&TieToZero, GradeWindow::new(-2, 2).unwrap());
        let law = report.get("base_plus_conj_is_all").unwrap();
        assert!(!law.passed);
        assert_eq!(
            law.counterexample.as_deref(),
            Some("x = PST, conj(x) = NGT")
        );
        assert!(!report.get("mul_de_morgan").unwrap().passed);
        assert!(report.get("add_commutative").unwrap().passed);
    }

    struct MinProduct;

    impl MnesorAlgebra for MinProduct {
        // The sign bug this guards against: integer min instead of flat-order min.
        fn mul(&self, x: Mnesor, y: Mnesor) -> Mnesor {
            match (x, y) {
                (Mnesor::Pst(a), Mnesor::Pst(b)) => Mnesor::Pst(a.fadd(b)),
                _ => x.mmul(y),
            }
        }
    }

    #[test]
    fn integer_min_product_is_caught() {
        let report = check_laws_with(&MinProduct, GradeWindow::new(-2, 2).unwrap());
        let law = report.get("mul_de_morgan").unwrap();
        assert_eq!(law.counterexample.as_deref(), Some("x = PST, y = PST(+1)"));
        assert!(!report.get("mul_scaled_selects_stronger").unwrap().passed);
    }

    struct CollapsingAdd;

    impl MnesorAlgebra for CollapsingAdd {
        // Rule "xλ + conj(x) = conj(x)" applied to every graded x.
        fn add(&self, x: Mnesor, y: Mnesor) -> Mnesor {
            match (x.polarity(), y.polarity()) {
                (Some(px), Some(py)) if px != py => y,
                _ => x.madd(y),
            }
        }
    }

    #[test]
    fn non_base_reading_is_flagged() {
        let report = check_laws_with(&CollapsingAdd, GradeWindow::new(-2, 2).unwrap());
        assert!(!report.get("non_base_rules_stay_distinct").unwrap().passed);
        assert!(!report.get("add_commutative").unwrap().passed);
    }

    #[test]
    fn report_renders_counts() {
        let report = check_laws(GradeWindow::new(0, 0).unwrap());
        let text = report.to_string();
        assert!(text.contains("0 failed"));
        assert!(text.lines().next().unwrap().starts_with("pass"));
    }
}
