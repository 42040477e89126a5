//! Category-qualified lexeme labels such as `V.peler` or `N.pomme`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A lexeme label of the form `<CAT>.<lemma>`.
///
/// Equality and ordering are byte-wise on the full label. The category is the
/// part before the first `.`; the lemma may itself contain dots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lexeme {
    label: String,
    split: usize,
}

impl Lexeme {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        match label.find('.') {
            Some(split) if split > 0 && split + 1 < label.len() => Ok(Lexeme { label, split }),
            _ => Err(Error::InvalidLexeme(label)),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn category(&self) -> &str {
        &self.label[..self.split]
    }

    pub fn lemma(&self) -> &str {
        &self.label[self.split + 1..]
    }

    pub fn same_category(&self, other: &Lexeme) -> bool {
        self.category() == other.category()
    }
}

impl FromStr for Lexeme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lexeme::new(s)
    }
}

impl fmt::Display for Lexeme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl AsRef<str> for Lexeme {
    fn as_ref(&self) -> &str {
        &self.label
    }
}
