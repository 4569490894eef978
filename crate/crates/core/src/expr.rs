//! Expression language over flat mnesors.
//!
//! ```text
//! expr   := prod ('+' prod)*
//! prod   := scaled ('*' scaled)*
//! scaled := unary ('.' flat)*
//! unary  := '~' unary | atom
//! atom   := 'ZERO' | 'ALL' | 'PST' [flat] | 'NGT' [flat] | '(' expr ')'
//! flat   := '(' ['+'|'-'] digits ')'
//! ```
//!
//! `~` is conjugation, `.` external multiplication, `*` internal
//! multiplication and `+` addition; `PST(+2)` is sugar for `PST.(+2)`.

use std::fmt;

use thiserror::Error;

use crate::error::{AlgebraError, ParseError};
use crate::minplus::{parse_flat_at, skip_ws, FlatNumber};
use crate::mnesor::{parse_literal_at, scan_word, Mnesor, KEYWORDS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Literal(Mnesor),
    Conj(Box<Expr>),
    Scale(Box<Expr>, FlatNumber),
    Mul(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl Expr {
    pub fn eval(&self) -> Result<Mnesor, AlgebraError> {
        Ok(match self {
            Expr::Literal(m) => *m,
            Expr::Conj(e) => e.eval()?.conj(),
            Expr::Scale(e, l) => e.eval()?.smul(*l)?,
            Expr::Mul(a, b) => a.eval()?.mmul(b.eval()?),
            Expr::Add(a, b) => a.eval()?.madd(b.eval()?),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(m) => write!(f, "{m}"),
            Expr::Conj(e) if matches!(**e, Expr::Scale(..)) => write!(f, "~({e})"),
            Expr::Conj(e) => write!(f, "~{e}"),
            Expr::Scale(e, l) => write!(f, "{e}.{l}"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
        }
    }
}

const OPERAND_START: [&str; 6] = [
    "'~'",
    "'('",
    KEYWORDS[0],
    KEYWORDS[1],
    KEYWORDS[2],
    KEYWORDS[3],
];

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        self.pos = skip_ws(self.text.as_bytes(), self.pos);
        self.text.as_bytes().get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.prod()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.prod()?;
            lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.scaled()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.scaled()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn scaled(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        while self.peek() == Some(b'.') {
            let (l, end) = parse_flat_at(self.text, self.pos + 1)?;
            self.pos = end;
            e = Expr::Scale(Box::new(e), l);
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'~') {
            self.pos += 1;
            return Ok(Expr::Conj(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ParseError::expected(
                        self.text,
                        self.pos,
                        &["'+'", "'*'", "'.'", "')'"],
                    ));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (word, _) = scan_word(self.text, self.pos);
                if !KEYWORDS.contains(&word) {
                    return Err(ParseError::expected(self.text, self.pos, &OPERAND_START));
                }
                let (m, end) = parse_literal_at(self.text, self.pos)?;
                self.pos = end;
                Ok(Expr::Literal(m))
            }
            _ => Err(ParseError::expected(self.text, self.pos, &OPERAND_START)),
        }
    }
}

/// Parses an expression; the whole input must be consumed.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(ParseError::expected(
            text,
            p.pos,
            &["'+'", "'*'", "'.'", "end of input"],
        ));
    }
    Ok(e)
}

/// Parses and evaluates an expression to its canonical mnesor.
pub fn evaluate(text: &str) -> Result<Mnesor, ExprError> {
    Ok(parse_expr(text)?.eval()?)
}
