//! Text formats: game files, strategy files and JSON verdicts.

pub mod game;
pub mod json;
pub mod strategy;

use thiserror::Error;

use crate::error::GameError;

pub use game::{parse_game, print_game};
pub use json::{verdict_json, VerdictJson, WitnessJson};
pub use strategy::{parse_joint, parse_profile, parse_strategies, print_profile, print_strategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    /// Malformed input; `line` is 1-based, 0 for whole-file problems.
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] GameError),
}

impl FormatError {
    pub(crate) fn syntax(line: usize, message: String) -> Self {
        FormatError::Syntax { line, message }
    }
}

/// Non-blank lines with `#` comments stripped, numbered from 1.
pub(crate) struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, &'a str);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }
}
