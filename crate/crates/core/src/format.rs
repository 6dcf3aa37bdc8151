//! The plain-text grid format.
//!
//! ```text
//! 5 8
//! . . 7 8 4
//! 3 . . 1 8
//! 2 6 5 7 .
//! 5 7 6 . .
//! 6 5 2 . 3
//! ```
//!
//! The first line holds `n k`; each of the next `n` lines holds `n`
//! whitespace-separated tokens, a decimal colour in `1..=k` or `.` for an
//! empty cell. Trailing whitespace and trailing blank lines are ignored.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::color::ColorId;
use crate::grid::{GridError, PartialColoring, Position};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Improper(#[from] GridError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_grid(text: &str) -> Result<PartialColoring, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing header \"n k\""))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    if nums.len() != 2 {
        return Err(syntax(hline, "header must be \"n k\""));
    }
    let n: usize = nums[0]
        .parse()
        .map_err(|_| syntax(hline, format!("bad order {:?}", nums[0])))?;
    let k: usize = nums[1]
        .parse()
        .map_err(|_| syntax(hline, format!("bad colour count {:?}", nums[1])))?;
    let mut pc = PartialColoring::empty(n, k)?;

    for row in 1..=n {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| syntax(hline + row, format!("expected {n} rows, found {}", row - 1)))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            return Err(syntax(
                lineno,
                format!("expected {n} cells, found {}", tokens.len()),
            ));
        }
        for (j, tok) in tokens.iter().enumerate() {
            if *tok == "." {
                continue;
            }
            if !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax(lineno, format!("invalid token {tok:?}")));
            }
            let value: usize = tok
                .parse()
                .map_err(|_| syntax(lineno, format!("invalid token {tok:?}")))?;
            let color = ColorId::new(value)
                .filter(|c| c.get() <= k)
                .ok_or_else(|| syntax(lineno, format!("colour {value} outside 1..={k}")))?;
            pc.set(Position::new(row, j + 1), color)?;
        }
    }
    if let Some((lineno, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(syntax(lineno, "unexpected content after the grid"));
    }
    Ok(pc)
}

impl FromStr for PartialColoring {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_grid(s)
    }
}

impl fmt::Display for PartialColoring {
    /// Writes the text grid format, one space between tokens, each line
    /// newline-terminated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.order(), self.num_colors())?;
        for row in self.to_rows() {
            let line: Vec<String> = row
                .iter()
                .map(|c| c.map_or_else(|| ".".to_string(), |c| c.to_string()))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
