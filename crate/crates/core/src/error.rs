use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("grade arithmetic out of range")]
    GradeOverflow,
}

/// A located syntax error in flat-number, mnesor or expression text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
    /// Tokens that would have been accepted at `offset`; empty when the error
    /// is not about a missing token.
    pub expected: Vec<&'static str>,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
            expected: Vec::new(),
        }
    }

    pub(crate) fn expected(text: &str, offset: usize, expected: &[&'static str]) -> Self {
        let found = match text[offset..].chars().next() {
            Some(c) => format!("found '{c}'"),
            None => "found end of input".to_string(),
        };
        ParseError {
            offset,
            message: found,
            expected: expected.to_vec(),
        }
    }

    /// Renders the error under the offending input with a caret marker.
    pub fn render(&self, input: &str) -> String {
        let col = input[..self.offset.min(input.len())].chars().count();
        format!("{input}\n{}^\n{self}", " ".repeat(col))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)?;
        if !self.expected.is_empty() {
            write!(f, "; expected one of: {}", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// A configuration value that violates its invariant, located by a dotted path.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ValidationError {
    pub path: String,
    pub message: String,
}

impl ValidationError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        ValidationError {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Prefixes the path with an enclosing field name.
    pub fn within(mut self, parent: &str) -> Self {
        self.path = if self.path.is_empty() {
            parent.to_string()
        } else {
            format!("{parent}.{}", self.path)
        };
        self
    }
}
