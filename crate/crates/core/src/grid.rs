//! Partial colourings of an `n x n` square with `k` colours.
//!
//! Rows and columns are numbered from 1 in every public signature. Cells are
//! stored densely in row-major order together with the set of colours already
//! used in each row and column, so the available colours of an empty cell are
//! two bitmask operations away.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::color::{ColorId, ColorSet, MAX_COLORS};

/// Largest supported order.
pub const MAX_ORDER: usize = 255;

/// A cell `(row, col)`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

impl Position {
    pub const fn new(row: usize, col: usize) -> Self {
        Position { row, col }
    }

    fn in_range(self, n: usize) -> bool {
        (1..=n).contains(&self.row) && (1..=n).contains(&self.col)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.row, self.col).serialize(serializer)
    }
}

impl From<(usize, usize)> for Position {
    fn from((row, col): (usize, usize)) -> Self {
        Position { row, col }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("order must be in 1..={MAX_ORDER}, got {0}")]
    InvalidOrder(usize),
    #[error("number of colours must be in 1..={MAX_COLORS}, got {0}")]
    InvalidColorCount(usize),
    #[error("position {pos} is outside a {n}x{n} grid")]
    PositionOutOfRange { pos: Position, n: usize },
    #[error("colour {color} is outside 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("cell {0} is listed twice")]
    DuplicateCell(Position),
    #[error("row {row} contains colour {color} twice (columns {first} and {second})")]
    RowClash {
        row: usize,
        color: ColorId,
        first: usize,
        second: usize,
    },
    #[error("column {col} contains colour {color} twice (rows {first} and {second})")]
    ColClash {
        col: usize,
        color: ColorId,
        first: usize,
        second: usize,
    },
    #[error("cell {0} is already coloured")]
    CellAlreadyColored(Position),
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
}

/// The union of row `i` and column `j`: the `2n - 1` cells sharing a
/// coordinate with `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowColUnion {
    center: Position,
    cells: Vec<Position>,
}

impl RowColUnion {
    pub fn new(n: usize, center: Position) -> Result<Self, GridError> {
        if !center.in_range(n) {
            return Err(GridError::PositionOutOfRange { pos: center, n });
        }
        let mut cells: Vec<Position> = (1..=n).map(|c| Position::new(center.row, c)).collect();
        cells.extend(
            (1..=n)
                .filter(|&r| r != center.row)
                .map(|r| Position::new(r, center.col)),
        );
        Ok(RowColUnion { center, cells })
    }

    pub fn center(&self) -> Position {
        self.center
    }

    /// Row cells first (left to right), then the rest of the column (top to bottom).
    pub fn cells(&self) -> &[Position] {
        &self.cells
    }
}

/// An `n x n` square whose cells are either empty or coloured from `1..=k`,
/// with no colour repeated in any row or column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    order: usize,
    num_colors: usize,
    // 0 is the empty sentinel; never leaves this module as a colour.
    cells: Vec<u8>,
    row_used: Vec<ColorSet>,
    col_used: Vec<ColorSet>,
}

impl PartialColoring {
    /// The all-empty `n x n` grid over `k` colours.
    pub fn empty(order: usize, num_colors: usize) -> Result<Self, GridError> {
        if order == 0 || order > MAX_ORDER {
            return Err(GridError::InvalidOrder(order));
        }
        if num_colors == 0 || num_colors > MAX_COLORS {
            return Err(GridError::InvalidColorCount(num_colors));
        }
        Ok(PartialColoring {
            order,
            num_colors,
            cells: vec![0; order * order],
            row_used: vec![ColorSet::EMPTY; order],
            col_used: vec![ColorSet::EMPTY; order],
        })
    }

    /// Builds a grid with exactly the listed cells coloured. Rejects repeated
    /// positions and any colour repeated within a row or column.
    pub fn new<I>(order: usize, num_colors: usize, entries: I) -> Result<Self, GridError>
    where
        I: IntoIterator<Item = (Position, ColorId)>,
    {
        let mut pc = Self::empty(order, num_colors)?;
        for (pos, color) in entries {
            pc.set(pos, color).map_err(|e| match e {
                GridError::CellAlreadyColored(p) => GridError::DuplicateCell(p),
                other => other,
            })?;
        }
        Ok(pc)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Colour of `pos`, `None` when empty.
    ///
    /// # Panics
    /// Panics if `pos` is outside the grid.
    pub fn get(&self, pos: Position) -> Option<ColorId> {
        assert!(pos.in_range(self.order), "position {pos} outside grid");
        ColorId::from_raw(self.cells[self.index(pos)])
    }

    /// Colours an empty cell.
    pub fn set(&mut self, pos: Position, color: ColorId) -> Result<(), GridError> {
        self.check_pos(pos)?;
        if color.get() > self.num_colors {
            return Err(GridError::ColorOutOfRange {
                color: color.get(),
                k: self.num_colors,
            });
        }
        let (r, c) = (pos.row - 1, pos.col - 1);
        if self.cells[r * self.order + c] != 0 {
            return Err(GridError::CellAlreadyColored(pos));
        }
        if self.row_used[r].contains(color) {
            let first = self.find_in_row(r, color).expect("row set out of sync");
            return Err(GridError::RowClash {
                row: pos.row,
                color,
                first: first.min(pos.col),
                second: first.max(pos.col),
            });
        }
        if self.col_used[c].contains(color) {
            let first = self.find_in_col(c, color).expect("column set out of sync");
            return Err(GridError::ColClash {
                col: pos.col,
                color,
                first: first.min(pos.row),
                second: first.max(pos.row),
            });
        }
        self.assign(r * self.order + c, color);
        Ok(())
    }

    /// Empties a cell, returning its previous colour.
    pub fn clear(&mut self, pos: Position) -> Result<Option<ColorId>, GridError> {
        self.check_pos(pos)?;
        let idx = self.index(pos);
        let old = ColorId::from_raw(self.cells[idx]);
        if old.is_some() {
            self.unassign(idx);
        }
        Ok(old)
    }

    /// Coloured cells in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (Position, ColorId)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter_map(move |(i, &v)| ColorId::from_raw(v).map(|c| (self.position(i), c)))
    }

    /// Positions of all empty cells in row-major order.
    pub fn uncolored_cells(&self) -> Vec<Position> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 0)
            .map(|(i, _)| self.position(i))
            .collect()
    }

    pub fn empty_count(&self) -> usize {
        self.cells.iter().filter(|&&v| v == 0).count()
    }

    pub fn colored_count(&self) -> usize {
        self.cells.len() - self.empty_count()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|&v| v != 0)
    }

    /// Colours not used anywhere in the row and column of the empty cell `pos`.
    pub fn available_colors(&self, pos: Position) -> Result<ColorSet, GridError> {
        self.check_pos(pos)?;
        if self.cells[self.index(pos)] != 0 {
            return Err(GridError::CellAlreadyColored(pos));
        }
        Ok(self.avail_at(self.index(pos)))
    }

    /// Colours used in row `row` (1-based).
    pub fn row_colors(&self, row: usize) -> ColorSet {
        self.row_used[row - 1]
    }

    /// Colours used in column `col` (1-based).
    pub fn col_colors(&self, col: usize) -> ColorSet {
        self.col_used[col - 1]
    }

    /// Moves row `r` to `row_perm[r-1]` and column `c` to `col_perm[c-1]`,
    /// so cell `(i, j)` of the result is cell `(row_perm⁻¹(i), col_perm⁻¹(j))`
    /// of `self`. Both slices are 1-based permutations of `1..=n`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self, GridError> {
        let n = self.order;
        check_permutation(row_perm, n)?;
        check_permutation(col_perm, n)?;
        let mut out = Self::empty(n, self.num_colors)?;
        for (i, &v) in self.cells.iter().enumerate() {
            if let Some(c) = ColorId::from_raw(v) {
                let (r, col) = (i / n, i % n);
                let target = (row_perm[r] - 1) * n + (col_perm[col] - 1);
                out.assign(target, c);
            }
        }
        Ok(out)
    }

    /// Renames colour `c` to `color_map[c-1]`; `color_map` must be a
    /// permutation of `1..=k`.
    pub fn relabel(&self, color_map: &[usize]) -> Result<Self, GridError> {
        check_permutation(color_map, self.num_colors)?;
        let mut out = Self::empty(self.order, self.num_colors)?;
        for (i, &v) in self.cells.iter().enumerate() {
            if v != 0 {
                let c = ColorId::new(color_map[v as usize - 1]).expect("checked permutation");
                out.assign(i, c);
            }
        }
        Ok(out)
    }

    /// Reflects the grid in its main diagonal.
    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut out = Self::empty(n, self.num_colors).expect("same shape");
        for (i, &v) in self.cells.iter().enumerate() {
            if let Some(c) = ColorId::from_raw(v) {
                out.assign((i % n) * n + i / n, c);
            }
        }
        out
    }

    /// True when every coloured cell of `self` has the same colour in `other`.
    pub fn agrees_with(&self, other: &PartialColoring) -> bool {
        self.order == other.order
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(&a, &b)| a == 0 || a == b)
    }

    /// Rows of optional colours, for display and bindings.
    pub fn to_rows(&self) -> Vec<Vec<Option<ColorId>>> {
        self.cells
            .chunks(self.order)
            .map(|row| row.iter().map(|&v| ColorId::from_raw(v)).collect())
            .collect()
    }

    /// Row-major cell codes with 0 for empty. Orders grids lexicographically
    /// with empty below every colour.
    pub(crate) fn raw_cells(&self) -> &[u8] {
        &self.cells
    }

    /// Builds from row-major codes (0 = empty) that are already known to be proper.
    pub(crate) fn from_raw_unchecked(order: usize, num_colors: usize, cells: &[u8]) -> Self {
        let mut pc = Self::empty(order, num_colors).expect("valid shape");
        for (i, &v) in cells.iter().enumerate() {
            if let Some(c) = ColorId::from_raw(v) {
                debug_assert!(pc.avail_at(i).contains(c));
                pc.assign(i, c);
            }
        }
        pc
    }

    #[inline]
    pub(crate) fn avail_at(&self, idx: usize) -> ColorSet {
        let (r, c) = (idx / self.order, idx % self.order);
        ColorSet::full(self.num_colors).difference(self.row_used[r].union(self.col_used[c]))
    }

    #[inline]
    pub(crate) fn cell_raw(&self, idx: usize) -> u8 {
        self.cells[idx]
    }

    #[inline]
    pub(crate) fn assign(&mut self, idx: usize, color: ColorId) {
        let (r, c) = (idx / self.order, idx % self.order);
        self.cells[idx] = color.raw();
        self.row_used[r].insert(color);
        self.col_used[c].insert(color);
    }

    #[inline]
    pub(crate) fn unassign(&mut self, idx: usize) {
        let (r, c) = (idx / self.order, idx % self.order);
        if let Some(color) = ColorId::from_raw(self.cells[idx]) {
            self.row_used[r].remove(color);
            self.col_used[c].remove(color);
        }
        self.cells[idx] = 0;
    }

    #[inline]
    pub(crate) fn position(&self, idx: usize) -> Position {
        Position::new(idx / self.order + 1, idx % self.order + 1)
    }

    #[inline]
    pub(crate) fn index(&self, pos: Position) -> usize {
        (pos.row - 1) * self.order + (pos.col - 1)
    }

    fn check_pos(&self, pos: Position) -> Result<(), GridError> {
        if pos.in_range(self.order) {
            Ok(())
        } else {
            Err(GridError::PositionOutOfRange { pos, n: self.order })
        }
    }

    fn find_in_row(&self, r: usize, color: ColorId) -> Option<usize> {
        (0..self.order)
            .find(|&c| self.cells[r * self.order + c] == color.raw())
            .map(|c| c + 1)
    }

    fn find_in_col(&self, c: usize, color: ColorId) -> Option<usize> {
        (0..self.order)
            .find(|&r| self.cells[r * self.order + c] == color.raw())
            .map(|r| r + 1)
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<(), GridError> {
    if perm.len() != n {
        return Err(GridError::NotAPermutation(n));
    }
    let mut seen = vec![false; n];
    for &v in perm {
        if v == 0 || v > n || seen[v - 1] {
            return Err(GridError::NotAPermutation(n));
        }
        seen[v - 1] = true;
    }
    Ok(())
}

impl fmt::Debug for PartialColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialColoring(\n{self})")
    }
}
