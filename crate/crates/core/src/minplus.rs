//! Flat numbers: the integers under `⊕ = min` and `⊗ = +`.
//!
//! The order carried by flat numbers is the reverse of the usual integer
//! order: `x ⪯ y` iff `x ⊕ y = y`, so `(-1) ≻ (0) ≻ (+1)`. Larger grades sit
//! lower and denote stronger constraints once attached to a mnesor.

use std::fmt;
use std::str::FromStr;

use crate::error::{AlgebraError, ParseError};

/// An element of the min-plus integers, written `(0)`, `(+2)`, `(-1)`.
///
/// The grade is never `i64::MIN`, so negation is always defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct FlatNumber(i64);

impl FlatNumber {
    /// The multiplicative identity `(0)`.
    pub const ONE: FlatNumber = FlatNumber(0);

    pub fn new(grade: i64) -> Result<Self, AlgebraError> {
        if grade == i64::MIN {
            Err(AlgebraError::GradeOverflow)
        } else {
            Ok(FlatNumber(grade))
        }
    }

    #[inline]
    pub fn grade(self) -> i64 {
        self.0
    }

    /// `x ⊕ y = min(x, y)`.
    #[inline]
    pub fn fadd(self, rhs: Self) -> Self {
        FlatNumber(self.0.min(rhs.0))
    }

    /// `x ⊗ y = x + y`, overflow-checked.
    pub fn fmul(self, rhs: Self) -> Result<Self, AlgebraError> {
        self.0
            .checked_add(rhs.0)
            .ok_or(AlgebraError::GradeOverflow)
            .and_then(FlatNumber::new)
    }

    /// Multiplicative inverse; `(+1)⁻¹ = (-1)`.
    #[inline]
    pub fn finv(self) -> Self {
        FlatNumber(-self.0)
    }

    /// Flat order: `self ⪯ other` iff `self ⊕ other = other`, i.e. `other ≤ self`
    /// as ordinary integers.
    #[inline]
    pub fn fleq(self, other: Self) -> bool {
        self.fadd(other) == other
    }
}

impl From<i32> for FlatNumber {
    fn from(grade: i32) -> Self {
        FlatNumber(i64::from(grade))
    }
}

impl fmt::Display for FlatNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 > 0 {
            write!(f, "(+{})", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

/// Parses `"(" ["+"|"-"] digits ")"` starting at byte `start` of `text`.
///
/// Leading whitespace is skipped. Returns the value and the byte offset one
/// past the closing parenthesis.
pub(crate) fn parse_flat_at(text: &str, start: usize) -> Result<(FlatNumber, usize), ParseError> {
    let bytes = text.as_bytes();
    let mut pos = skip_ws(bytes, start);
    if bytes.get(pos) != Some(&b'(') {
        return Err(ParseError::expected(text, pos, &["'('"]));
    }
    pos = skip_ws(bytes, pos + 1);
    let negative = match bytes.get(pos) {
        Some(b'+') => {
            pos += 1;
            false
        }
        Some(b'-') => {
            pos += 1;
            true
        }
        _ => false,
    };
    let digits_start = pos;
    while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
        pos += 1;
    }
    if pos == digits_start {
        return Err(ParseError::expected(text, pos, &["digit"]));
    }
    let magnitude: i64 = text[digits_start..pos]
        .parse()
        .map_err(|_| ParseError::new(digits_start, "grade out of range"))?;
    let grade = if negative { -magnitude } else { magnitude };
    pos = skip_ws(bytes, pos);
    if bytes.get(pos) != Some(&b')') {
        return Err(ParseError::expected(text, pos, &["')'"]));
    }
    Ok((FlatNumber(grade), pos + 1))
}

pub(crate) fn skip_ws(bytes: &[u8], mut pos: usize) -> usize {
    while bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        pos += 1;
    }
    pos
}

/// Parses a flat number in `(+2)` notation; surrounding whitespace is allowed.
pub fn parse_flat(text: &str) -> Result<FlatNumber, ParseError> {
    let (value, end) = parse_flat_at(text, 0)?;
    let end = skip_ws(text.as_bytes(), end);
    if end != text.len() {
        return Err(ParseError::expected(text, end, &["end of input"]));
    }
    Ok(value)
}

impl FromStr for FlatNumber {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_flat(s)
    }
}
