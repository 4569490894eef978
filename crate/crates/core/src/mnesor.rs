//! Flat mnesors in canonical form.
//!
//! Every flat mnesor is one of `ZERO` (the empty mnesor), `ALL` (its
//! conjugate), `PST·λ` or `NGT·λ`. Graded variants carry the scaling flat
//! number; `ZERO` and `ALL` absorb scaling, so they have no grade.
//!
//! Addition relaxes: it returns the softer (smaller grade) operand, and exact
//! opposition (`PST·λ + NGT·λ`) yields `ALL`. Internal multiplication is the
//! conjugate dual: it returns the more constrained operand, and exact
//! opposition yields `ZERO`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{AlgebraError, ParseError};
use crate::minplus::{parse_flat_at, skip_ws, FlatNumber};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mnesor {
    Zero,
    All,
    Pst(FlatNumber),
    Ngt(FlatNumber),
}

/// Sign of a graded mnesor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Pst,
    Ngt,
}

impl Polarity {
    pub fn opposite(self) -> Self {
        match self {
            Polarity::Pst => Polarity::Ngt,
            Polarity::Ngt => Polarity::Pst,
        }
    }
}

impl Mnesor {
    pub const PST: Mnesor = Mnesor::Pst(FlatNumber::ONE);
    pub const NGT: Mnesor = Mnesor::Ngt(FlatNumber::ONE);

    /// The four base mnesors every flat mnesor is a scaling of.
    pub const BASES: [Mnesor; 4] = [Mnesor::PST, Mnesor::NGT, Mnesor::All, Mnesor::Zero];

    pub fn graded(polarity: Polarity, grade: FlatNumber) -> Self {
        match polarity {
            Polarity::Pst => Mnesor::Pst(grade),
            Polarity::Ngt => Mnesor::Ngt(grade),
        }
    }

    pub fn polarity(self) -> Option<Polarity> {
        match self {
            Mnesor::Pst(_) => Some(Polarity::Pst),
            Mnesor::Ngt(_) => Some(Polarity::Ngt),
            Mnesor::Zero | Mnesor::All => None,
        }
    }

    pub fn grade(self) -> Option<FlatNumber> {
        match self {
            Mnesor::Pst(g) | Mnesor::Ngt(g) => Some(g),
            Mnesor::Zero | Mnesor::All => None,
        }
    }

    /// The base this mnesor is a scaling of.
    pub fn base(self) -> Mnesor {
        match self {
            Mnesor::Pst(_) => Mnesor::PST,
            Mnesor::Ngt(_) => Mnesor::NGT,
            other => other,
        }
    }

    pub fn madd(self, rhs: Mnesor) -> Mnesor {
        use Mnesor::*;
        match (self, rhs) {
            (Zero, x) | (x, Zero) => x,
            (All, _) | (_, All) => All,
            (Pst(l), Pst(m)) => Pst(l.fadd(m)),
            (Ngt(l), Ngt(m)) => Ngt(l.fadd(m)),
            (Pst(_), Ngt(_)) | (Ngt(_), Pst(_)) => opposed(self, rhs, All, Ordering::Less),
        }
    }

    /// External multiplication `x·λ`.
    pub fn smul(self, scalar: FlatNumber) -> Result<Mnesor, AlgebraError> {
        Ok(match self {
            Mnesor::Pst(g) => Mnesor::Pst(g.fmul(scalar)?),
            Mnesor::Ngt(g) => Mnesor::Ngt(g.fmul(scalar)?),
            absorbing => absorbing,
        })
    }

    pub fn conj(self) -> Mnesor {
        match self {
            Mnesor::Zero => Mnesor::All,
            Mnesor::All => Mnesor::Zero,
            Mnesor::Pst(g) => Mnesor::Ngt(g.finv()),
            Mnesor::Ngt(g) => Mnesor::Pst(g.finv()),
        }
    }

    /// Internal multiplication `x × y`, equal to `conj(conj(x) + conj(y))`.
    pub fn mmul(self, rhs: Mnesor) -> Mnesor {
        use Mnesor::*;
        match (self, rhs) {
            (Zero, _) | (_, Zero) => Zero,
            (All, x) | (x, All) => x,
            (Pst(l), Pst(m)) => Pst(stronger(l, m)),
            (Ngt(l), Ngt(m)) => Ngt(stronger(l, m)),
            (Pst(_), Ngt(_)) | (Ngt(_), Pst(_)) => opposed(self, rhs, Zero, Ordering::Greater),
        }
    }

    /// Partial order: `self ≤ other` iff `self = other·λ` for some `λ ⪯ (0)`
    /// (integer grade `≥ 0`).
    pub fn mleq(self, other: Mnesor) -> bool {
        match (self, other) {
            (Mnesor::Zero, Mnesor::Zero) | (Mnesor::All, Mnesor::All) => true,
            (Mnesor::Pst(a), Mnesor::Pst(b)) | (Mnesor::Ngt(a), Mnesor::Ngt(b)) => {
                a.grade() >= b.grade()
            }
            _ => false,
        }
    }
}

/// Combines two graded mnesors of opposite polarity: the operand whose grade
/// compares as `winner` against the other is returned, and a tie yields `tie`.
fn opposed(x: Mnesor, y: Mnesor, tie: Mnesor, winner: Ordering) -> Mnesor {
    let (gx, gy) = (x.grade().unwrap(), y.grade().unwrap());
    match gx.grade().cmp(&gy.grade()) {
        Ordering::Equal => tie,
        ord if ord == winner => x,
        _ => y,
    }
}

/// The grade with the larger integer value: the stronger constraint.
fn stronger(l: FlatNumber, m: FlatNumber) -> FlatNumber {
    if l.grade() >= m.grade() {
        l
    } else {
        m
    }
}

impl Add for Mnesor {
    type Output = Mnesor;

    fn add(self, rhs: Mnesor) -> Mnesor {
        self.madd(rhs)
    }
}

impl Mul for Mnesor {
    type Output = Mnesor;

    fn mul(self, rhs: Mnesor) -> Mnesor {
        self.mmul(rhs)
    }
}

impl fmt::Display for Mnesor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, grade) = match *self {
            Mnesor::Zero => return f.write_str("ZERO"),
            Mnesor::All => return f.write_str("ALL"),
            Mnesor::Pst(g) => ("PST", g),
            Mnesor::Ngt(g) => ("NGT", g),
        };
        if grade == FlatNumber::ONE {
            f.write_str(name)
        } else {
            write!(f, "{name}{grade}")
        }
    }
}

pub(crate) const KEYWORDS: [&str; 4] = ["ZERO", "ALL", "PST", "NGT"];

/// Reads an ASCII identifier at `pos`, returning it and the end offset.
pub(crate) fn scan_word(text: &str, pos: usize) -> (&str, usize) {
    let bytes = text.as_bytes();
    let mut end = pos;
    while bytes.get(end).is_some_and(u8::is_ascii_alphabetic) {
        end += 1;
    }
    (&text[pos..end], end)
}

/// Parses one mnesor literal (`ZERO`, `ALL`, `PST`, `NGT(-3)`, ...) at `start`.
pub(crate) fn parse_literal_at(text: &str, start: usize) -> Result<(Mnesor, usize), ParseError> {
    let bytes = text.as_bytes();
    let pos = skip_ws(bytes, start);
    let (word, end) = scan_word(text, pos);
    let polarity = match word {
        "ZERO" => return Ok((Mnesor::Zero, end)),
        "ALL" => return Ok((Mnesor::All, end)),
        "PST" => Polarity::Pst,
        "NGT" => Polarity::Ngt,
        _ => return Err(ParseError::expected(text, pos, &KEYWORDS)),
    };
    let after = skip_ws(bytes, end);
    if bytes.get(after) == Some(&b'(') {
        let (grade, end) = parse_flat_at(text, after)?;
        Ok((Mnesor::graded(polarity, grade), end))
    } else {
        Ok((Mnesor::graded(polarity, FlatNumber::ONE), end))
    }
}

/// Parses a single mnesor literal in canonical notation.
pub fn parse_mnesor(text: &str) -> Result<Mnesor, ParseError> {
    let (value, end) = parse_literal_at(text, 0)?;
    let end = skip_ws(text.as_bytes(), end);
    if end != text.len() {
        return Err(ParseError::expected(text, end, &["end of input"]));
    }
    Ok(value)
}

impl FromStr for Mnesor {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_mnesor(s)
    }
}

#[cfg(test)]
mod tests {
    use super::Mnesor::*;
    use super::*;
    use proptest::prelude::*;

    fn f(g: i32) -> FlatNumber {
        FlatNumber::from(g)
    }

    #[test]
    fn addition_table() {
        assert_eq!(Mnesor::PST + Mnesor::NGT, All);
        assert_eq!(Pst(f(3)) + Mnesor::NGT, Mnesor::NGT);
        assert_eq!(Pst(f(2)) + Pst(f(5)), Pst(f(2)));
        assert_eq!(Ngt(f(-1)) + Pst(f(4)), Ngt(f(-1)));
        assert_eq!(Zero + Pst(f(4)), Pst(f(4)));
        assert_eq!(Ngt(f(4)) + All, All);
        assert_eq!(Pst(f(6)) + Pst(f(6)), Pst(f(6)));
    }

    #[test]
    fn scaling() {
        assert_eq!(Mnesor::PST.smul(f(2)).unwrap(), Pst(f(2)));
        assert_eq!(Ngt(f(-3)).smul(f(0)).unwrap(), Ngt(f(-3)));
        assert_eq!(Zero.smul(f(5)).unwrap(), Zero);
        assert_eq!(All.smul(f(-5)).unwrap(), All);
        let top = FlatNumber::new(i64::MAX).unwrap();
        assert_eq!(Pst(top).smul(f(1)), Err(AlgebraError::GradeOverflow));
    }

    #[test]
    fn conjugation() {
        assert_eq!(Mnesor::PST.conj(), Mnesor::NGT);
        assert_eq!(Pst(f(2)).conj(), Ngt(f(-2)));
        assert_eq!(Zero.conj(), All);
        assert_eq!(All.conj(), Zero);
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(Mnesor::PST * Mnesor::NGT, Zero);
        assert_eq!(Mnesor::PST * Ngt(f(-2)), Mnesor::PST);
        assert_eq!(Mnesor::NGT * Pst(f(-2)), Mnesor::NGT);
        assert_eq!(Pst(f(2)) * Pst(f(5)), Pst(f(5)));
        assert_eq!(Pst(f(3)) * Ngt(f(1)), Pst(f(3)));
        assert_eq!(Zero * All, Zero);
        assert_eq!(Ngt(f(7)) * All, Ngt(f(7)));
    }

    #[test]
    fn ordering() {
        assert!(Pst(f(2)).mleq(Mnesor::PST));
        assert!(!Mnesor::PST.mleq(Pst(f(2))));
        assert!(!Mnesor::PST.mleq(Mnesor::NGT));
        assert!(Zero.mleq(Zero));
        assert!(!Zero.mleq(All));
    }

    #[test]
    fn notation() {
        assert_eq!(Pst(f(2)).to_string(), "PST(+2)");
        assert_eq!(Ngt(f(-4)).to_string(), "NGT(-4)");
        assert_eq!(Mnesor::PST.to_string(), "PST");
        assert_eq!(parse_mnesor("ALL").unwrap(), All);
        assert_eq!(parse_mnesor("PST(0)").unwrap(), Mnesor::PST);
        assert_eq!(parse_mnesor(" NGT (+3) ").unwrap(), Ngt(f(3)));
        let err = parse_mnesor("PST(").unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(parse_mnesor("FOO").unwrap_err().offset, 0);
    }

    fn any_mnesor() -> impl Strategy<Value = Mnesor> {
        prop_oneof![
            Just(Zero),
            Just(All),
            (-1000i32..1000).prop_map(|g| Pst(f(g))),
            (-1000i32..1000).prop_map(|g| Ngt(f(g))),
        ]
    }

    proptest! {
        #[test]
        fn notation_round_trips(x in any_mnesor()) {
            prop_assert_eq!(parse_mnesor(&x.to_string()).unwrap(), x);
        }

        #[test]
        fn product_is_conjugate_of_sum_of_conjugates(x in any_mnesor(), y in any_mnesor()) {
            prop_assert_eq!(x * y, (x.conj() + y.conj()).conj());
        }
    }
}
