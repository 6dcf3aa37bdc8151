//! Detectors for configurations of empty cells that rule out a unique
//! completion when `k = 2n - 2`.
//!
//! All detectors are relational: they look for the pattern among any choice
//! of distinct rows and columns, so a witness exists for a grid exactly when
//! one exists for every row/column rearrangement of it. Scans run in
//! lexicographic order of the index tuples and return the first hit.

use serde::Serialize;
use thiserror::Error;

use crate::color::ColorSet;
use crate::grid::{PartialColoring, Position};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternKind {
    /// Three empty cells in one row or column.
    ThreeInLine,
    /// Empty cells at the four corners of a rectangle.
    Rectangle,
    /// Empty cells with available sets `{a}`, `{a,b}`, `{b,c}` along a
    /// row-column-row path, followed by one more empty cell.
    Lemma3Chain,
    /// Five empty cells forming a staircase path over three rows and three columns.
    Config2,
}

impl PatternKind {
    pub fn name(self) -> &'static str {
        match self {
            PatternKind::ThreeInLine => "three-in-line",
            PatternKind::Rectangle => "rectangle",
            PatternKind::Lemma3Chain => "lemma3-chain",
            PatternKind::Config2 => "config2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    RowForm,
    Transposed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    pub pattern: PatternKind,
    pub positions: Vec<Position>,
    /// Rows used, in pattern order.
    pub rows: Vec<usize>,
    /// Columns used, in pattern order.
    pub cols: Vec<usize>,
    /// Available colours of the first three positions (chains only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub available_sets: Vec<ColorSet>,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("the uncoloured-cell bound needs k = 2n - 2 = {expected}, got k = {got}")]
    WrongColorCount { expected: usize, got: usize },
}

/// Dense emptiness mask, 0-based.
struct Holes {
    n: usize,
    empty: Vec<bool>,
}

impl Holes {
    fn new(pc: &PartialColoring) -> Self {
        let n = pc.order();
        Holes {
            n,
            empty: (0..n * n).map(|i| pc.cell_raw(i) == 0).collect(),
        }
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> bool {
        self.empty[r * self.n + c]
    }

    fn in_row(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&c| self.at(r, c))
    }

    fn in_col(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&r| self.at(r, c))
    }
}

fn pos(r: usize, c: usize) -> Position {
    Position::new(r + 1, c + 1)
}

fn witness(
    pattern: PatternKind,
    cells: &[(usize, usize)],
    rows: &[usize],
    cols: &[usize],
    orientation: Orientation,
) -> PatternWitness {
    PatternWitness {
        pattern,
        positions: cells.iter().map(|&(r, c)| pos(r, c)).collect(),
        rows: rows.iter().map(|r| r + 1).collect(),
        cols: cols.iter().map(|c| c + 1).collect(),
        available_sets: Vec::new(),
        orientation,
    }
}

/// Three empty cells sharing a row (scanned first) or a column.
pub fn detect_three_in_line(pc: &PartialColoring) -> Option<PatternWitness> {
    let h = Holes::new(pc);
    for r in 0..h.n {
        let cols: Vec<usize> = h.in_row(r).take(3).collect();
        if cols.len() == 3 {
            let cells: Vec<_> = cols.iter().map(|&c| (r, c)).collect();
            return Some(witness(
                PatternKind::ThreeInLine,
                &cells,
                &[r],
                &cols,
                Orientation::RowForm,
            ));
        }
    }
    for c in 0..h.n {
        let rows: Vec<usize> = h.in_col(c).take(3).collect();
        if rows.len() == 3 {
            let cells: Vec<_> = rows.iter().map(|&r| (r, c)).collect();
            return Some(witness(
                PatternKind::ThreeInLine,
                &cells,
                &rows,
                &[c],
                Orientation::Transposed,
            ));
        }
    }
    None
}

/// Rows `a < b` and columns `x < y` with all four crossings empty.
pub fn detect_rectangle(pc: &PartialColoring) -> Option<PatternWitness> {
    let h = Holes::new(pc);
    for a in 0..h.n {
        let cols: Vec<usize> = h.in_row(a).collect();
        for b in a + 1..h.n {
            let shared: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&c| h.at(b, c))
                .take(2)
                .collect();
            if let [x, y] = shared[..] {
                return Some(witness(
                    PatternKind::Rectangle,
                    &[(a, x), (a, y), (b, x), (b, y)],
                    &[a, b],
                    &[x, y],
                    Orientation::RowForm,
                ));
            }
        }
    }
    None
}

/// Available-set chain `{a}`, `{a,b}`, `{b,c}` followed by an empty cell.
///
/// Row form: `a(r1,c1) = {a}`, `a(r1,c2) = {a,b}`, `a(r2,c2) = {b,c}` and
/// `(r2,c3)` empty, for distinct rows `r1, r2` and distinct columns
/// `c1, c2, c3`. Transposed form swaps the roles of rows and columns:
/// `a(r1,c1) = {a}`, `a(r2,c1) = {a,b}`, `a(r2,c2) = {b,c}`, `(r3,c2)` empty.
pub fn detect_lemma3_chain(pc: &PartialColoring) -> Option<PatternWitness> {
    let n = pc.order();
    let h = Holes::new(pc);
    let avail: Vec<Option<ColorSet>> = (0..n * n)
        .map(|i| (pc.cell_raw(i) == 0).then(|| pc.avail_at(i)))
        .collect();
    let at = |r: usize, c: usize| avail[r * n + c];

    let chain = |first: ColorSet, second: ColorSet, third: ColorSet| -> bool {
        second.len() == 2
            && third.len() == 2
            && second.intersection(first) == first
            && !second.difference(first).intersection(third).is_empty()
    };

    // Row form.
    for r1 in 0..n {
        for c1 in 0..n {
            let Some(s1) = at(r1, c1).filter(|s| s.len() == 1) else {
                continue;
            };
            for c2 in (0..n).filter(|&c| c != c1) {
                let Some(s2) = at(r1, c2) else { continue };
                for r2 in (0..n).filter(|&r| r != r1) {
                    let Some(s3) = at(r2, c2) else { continue };
                    if !chain(s1, s2, s3) {
                        continue;
                    }
                    if let Some(c3) = h.in_row(r2).find(|&c| c != c1 && c != c2) {
                        let mut w = witness(
                            PatternKind::Lemma3Chain,
                            &[(r1, c1), (r1, c2), (r2, c2), (r2, c3)],
                            &[r1, r2],
                            &[c1, c2, c3],
                            Orientation::RowForm,
                        );
                        w.available_sets = vec![s1, s2, s3];
                        return Some(w);
                    }
                }
            }
        }
    }

    // Transposed form.
    for r1 in 0..n {
        for c1 in 0..n {
            let Some(s1) = at(r1, c1).filter(|s| s.len() == 1) else {
                continue;
            };
            for r2 in (0..n).filter(|&r| r != r1) {
                let Some(s2) = at(r2, c1) else { continue };
                for c2 in (0..n).filter(|&c| c != c1) {
                    let Some(s3) = at(r2, c2) else { continue };
                    if !chain(s1, s2, s3) {
                        continue;
                    }
                    if let Some(r3) = h.in_col(c2).find(|&r| r != r1 && r != r2) {
                        let mut w = witness(
                            PatternKind::Lemma3Chain,
                            &[(r1, c1), (r2, c1), (r2, c2), (r3, c2)],
                            &[r1, r2, r3],
                            &[c1, c2],
                            Orientation::Transposed,
                        );
                        w.available_sets = vec![s1, s2, s3];
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

/// Empty cells at `(r1,c1), (r1,c2), (r2,c2), (r2,c3), (r3,c3)` for distinct
/// rows and distinct columns. Read backwards the same path starts with a
/// column step, so this also covers the transposed staircase.
pub fn detect_config2(pc: &PartialColoring) -> Option<PatternWitness> {
    let h = Holes::new(pc);
    let n = h.n;
    for r1 in 0..n {
        for c1 in h.in_row(r1) {
            for c2 in h.in_row(r1).filter(|&c| c != c1) {
                for r2 in h.in_col(c2).filter(|&r| r != r1) {
                    for c3 in h.in_row(r2).filter(|&c| c != c1 && c != c2) {
                        if let Some(r3) = h.in_col(c3).find(|&r| r != r1 && r != r2) {
                            return Some(witness(
                                PatternKind::Config2,
                                &[(r1, c1), (r1, c2), (r2, c2), (r2, c3), (r3, c3)],
                                &[r1, r2, r3],
                                &[c1, c2, c3],
                                Orientation::RowForm,
                            ));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Runs every detector, in the order three-in-line, rectangle, chain, staircase.
pub fn detect_all(pc: &PartialColoring) -> Vec<PatternWitness> {
    [
        detect_three_in_line(pc),
        detect_rectangle(pc),
        detect_lemma3_chain(pc),
        detect_config2(pc),
    ]
    .into_iter()
    .flatten()
    .collect()
}

/// Largest number of empty cells a uniquely completable grid with
/// `k = 2n - 2` can have: `floor(8n / 5)`.
pub fn uncolored_bound(n: usize) -> usize {
    8 * n / 5
}

/// Whether the number of empty cells is at most `floor(8n/5)`. Only
/// meaningful for `k = 2n - 2`.
pub fn check_uncolored_bound(pc: &PartialColoring) -> Result<bool, PatternError> {
    let n = pc.order();
    let expected = (2 * n).saturating_sub(2);
    if pc.num_colors() != expected {
        return Err(PatternError::WrongColorCount {
            expected,
            got: pc.num_colors(),
        });
    }
    Ok(pc.empty_count() <= uncolored_bound(n))
}
