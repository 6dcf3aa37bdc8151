//! Explicit partial colourings with few coloured cells that still complete
//! uniquely.
//!
//! * [`construct_2n_minus_1`]: `n` even, `k = 2n - 1`, only the main
//!   diagonal empty (it is forced to colour `n`).
//! * [`construct_five_eight`]: the 5x5 grid over 8 colours with 8 empty cells.
//! * [`construct_block_ten_m`]: `10 | n`, `k = 2n - 2`, `8n/5` empty cells,
//!   built from 5x5 blocks over a lifted base square.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::color::ColorId;
use crate::grid::{PartialColoring, Position};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("order must be even and at least 2, got {0}")]
    OddOrder(usize),
    #[error("order must be a positive multiple of 10, got {0}")]
    NotMultipleOfTen(usize),
    #[error("the five-eight construction has order 5, got {0}")]
    NotFive(usize),
    #[error("unknown construction {0:?} (expected two-n-minus-one, five-eight or block-ten-m)")]
    UnknownKind(String),
    #[error("order {0} is too large")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    TwoNMinusOne,
    FiveEight,
    BlockTenM,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 3] = [
        ConstructionKind::TwoNMinusOne,
        ConstructionKind::FiveEight,
        ConstructionKind::BlockTenM,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::TwoNMinusOne => "two-n-minus-one",
            ConstructionKind::FiveEight => "five-eight",
            ConstructionKind::BlockTenM => "block-ten-m",
        }
    }

    /// Smallest order the construction accepts.
    pub fn smallest_order(self) -> usize {
        match self {
            ConstructionKind::TwoNMinusOne => 2,
            ConstructionKind::FiveEight => 5,
            ConstructionKind::BlockTenM => 10,
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConstructionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| ConstructionError::UnknownKind(s.to_string()))
    }
}

/// Which construction to build, and at which order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub n: usize,
}

impl ConstructionSpec {
    pub fn new(kind: ConstructionKind, n: usize) -> Result<Self, ConstructionError> {
        match kind {
            ConstructionKind::TwoNMinusOne if n < 2 || n % 2 == 1 => {
                Err(ConstructionError::OddOrder(n))
            }
            ConstructionKind::FiveEight if n != 5 => Err(ConstructionError::NotFive(n)),
            ConstructionKind::BlockTenM if n == 0 || !n.is_multiple_of(10) => {
                Err(ConstructionError::NotMultipleOfTen(n))
            }
            _ => Ok(ConstructionSpec { kind, n }),
        }
    }

    /// Number of colours the construction uses.
    pub fn num_colors(&self) -> usize {
        match self.kind {
            ConstructionKind::TwoNMinusOne => 2 * self.n - 1,
            ConstructionKind::FiveEight => 8,
            ConstructionKind::BlockTenM => 2 * self.n - 2,
        }
    }

    pub fn build(&self) -> Result<PartialColoring, ConstructionError> {
        match self.kind {
            ConstructionKind::TwoNMinusOne => construct_2n_minus_1(self.n),
            ConstructionKind::FiveEight => Ok(construct_five_eight()),
            ConstructionKind::BlockTenM => construct_block_ten_m(self.n),
        }
    }
}

fn color(v: usize) -> ColorId {
    ColorId::new(v).expect("construction colours are in range")
}

/// Residue of `x` modulo `m`, represented in `1..=m` (0 maps to `m`).
fn residue(x: usize, m: usize) -> usize {
    match x % m {
        0 => m,
        r => r,
    }
}

/// Colour of the off-diagonal cell `(i, j)` (1-based) in the `2n - 1`
/// construction, or `None` on the diagonal.
fn two_n_minus_one_color(n: usize, i: usize, j: usize) -> Option<usize> {
    let below = |i: usize, j: usize| {
        if i == n {
            residue(2 * j, n - 1)
        } else {
            residue(i + j, n - 1)
        }
    };
    match i.cmp(&j) {
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some(below(i, j)),
        std::cmp::Ordering::Less => Some(below(j, i) + n),
    }
}

/// `n` even, `k = 2n - 1`. Below the diagonal, `(i, j)` gets `i + j mod (n-1)`
/// for `i < n` and `2j mod (n-1)` in row `n`; `(j, i)` above the diagonal gets
/// the colour of `(i, j)` plus `n`. The diagonal stays empty.
pub fn construct_2n_minus_1(n: usize) -> Result<PartialColoring, ConstructionError> {
    if n < 2 || n % 2 == 1 {
        return Err(ConstructionError::OddOrder(n));
    }
    let k = 2 * n - 1;
    if k > crate::color::MAX_COLORS {
        return Err(ConstructionError::TooLarge(n));
    }
    let entries = (1..=n).flat_map(|i| {
        (1..=n).filter_map(move |j| {
            two_n_minus_one_color(n, i, j).map(|c| (Position::new(i, j), color(c)))
        })
    });
    Ok(PartialColoring::new(n, k, entries).expect("construction is proper"))
}

const FIVE_EIGHT: [[u8; 5]; 5] = [
    [0, 0, 7, 8, 4],
    [3, 0, 0, 1, 8],
    [2, 6, 5, 7, 0],
    [5, 7, 6, 0, 0],
    [6, 5, 2, 0, 3],
];

/// The 5x5 partial colouring over 8 colours with 17 coloured cells.
pub fn construct_five_eight() -> PartialColoring {
    let cells: Vec<u8> = FIVE_EIGHT.iter().flatten().copied().collect();
    PartialColoring::from_raw_unchecked(5, 8, &cells)
}

/// Splits `{1..=2n-2}` into one 8-colour block and `2n/5 - 2` five-colour
/// blocks indexed by the base colours `1..=2m-1`, `m = n/5`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorCorrespondence {
    n: usize,
    images: Vec<Vec<ColorId>>,
}

impl ColorCorrespondence {
    pub fn order(&self) -> usize {
        self.n
    }

    /// `m = n / 5`, the base colour whose image has 8 colours.
    pub fn pivot(&self) -> usize {
        self.n / 5
    }

    /// Number of base colours, `2m - 1`.
    pub fn base_colors(&self) -> usize {
        self.images.len()
    }

    /// Image of base colour `i`, ascending.
    ///
    /// # Panics
    /// Panics if `i` is not in `1..=2m-1`.
    pub fn image(&self, i: usize) -> &[ColorId] {
        &self.images[i - 1]
    }
}

pub fn make_correspondence(n: usize) -> Result<ColorCorrespondence, ConstructionError> {
    if n == 0 || !n.is_multiple_of(10) {
        return Err(ConstructionError::NotMultipleOfTen(n));
    }
    let m = n / 5;
    let block = |start: usize| (start + 1..=start + 5).map(color).collect::<Vec<_>>();
    let images = (1..=2 * m - 1)
        .map(|i| match i.cmp(&m) {
            std::cmp::Ordering::Equal => (1..=8).map(color).collect(),
            std::cmp::Ordering::Less => block(8 + 5 * (i - 1)),
            std::cmp::Ordering::Greater => block(8 + 5 * (i - 2)),
        })
        .collect();
    Ok(ColorCorrespondence { n, images })
}

/// `10 | n`, `k = 2n - 2`.
///
/// The base square is the transpose of `construct_2n_minus_1(n/5)` with its
/// diagonal coloured `n/5`. Each off-diagonal base cell of colour `c` becomes
/// a 5x5 block whose cell `(r, s)` holds the `((r + s - 2) mod 5) + 1`-th
/// colour of the image of `c`; each diagonal block is a copy of
/// [`construct_five_eight`], empty cells included.
pub fn construct_block_ten_m(n: usize) -> Result<PartialColoring, ConstructionError> {
    let f = make_correspondence(n)?;
    let m = n / 5;
    let k = 2 * n - 2;
    if n > crate::grid::MAX_ORDER || k > crate::color::MAX_COLORS {
        return Err(ConstructionError::TooLarge(n));
    }
    let mut cells = vec![0u8; n * n];
    for bi in 1..=m {
        for bj in 1..=m {
            for r in 1..=5 {
                for s in 1..=5 {
                    let value = if bi == bj {
                        FIVE_EIGHT[r - 1][s - 1]
                    } else {
                        // transposed base square
                        let base = two_n_minus_one_color(m, bj, bi).expect("off-diagonal");
                        f.image(base)[(r + s - 2) % 5].raw()
                    };
                    cells[(5 * (bi - 1) + r - 1) * n + 5 * (bj - 1) + s - 1] = value;
                }
            }
        }
    }
    let entries = cells.iter().enumerate().filter_map(|(i, &v)| {
        ColorId::from_raw(v).map(|c| (Position::new(i / n + 1, i % n + 1), c))
    });
    Ok(PartialColoring::new(n, k, entries).expect("construction is proper"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RowColUnion;

    fn ids(v: &[ColorId]) -> Vec<usize> {
        v.iter().map(|c| c.get()).collect()
    }

    #[test]
    fn two_n_minus_one_small() {
        // Hand-applied formulas.
        assert_eq!(
            construct_2n_minus_1(2).unwrap().to_string(),
            "2 3\n. 3\n1 .\n"
        );
        assert_eq!(
            construct_2n_minus_1(4).unwrap().to_string(),
            "4 7\n. 7 5 6\n3 . 6 5\n1 2 . 7\n2 1 3 .\n"
        );
    }

    #[test]
    fn two_n_minus_one_rejects_odd() {
        for n in [0, 1, 3, 5, 7] {
            assert_eq!(
                construct_2n_minus_1(n).unwrap_err(),
                ConstructionError::OddOrder(n)
            );
        }
    }

    #[test]
    fn diagonal_unions_miss_only_n() {
        for n in (2..=20).step_by(2) {
            let pc = construct_2n_minus_1(n).unwrap();
            assert_eq!(pc.colored_count(), n * n - n);
            for i in 1..=n {
                let u = RowColUnion::new(n, Position::new(i, i)).unwrap();
                let mut colors: Vec<usize> = u
                    .cells()
                    .iter()
                    .filter_map(|&p| pc.get(p))
                    .map(|c| c.get())
                    .collect();
                colors.sort_unstable();
                let expected: Vec<usize> = (1..2 * n).filter(|&c| c != n).collect();
                assert_eq!(colors, expected, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn five_eight_table() {
        let pc = construct_five_eight();
        assert_eq!(
            pc.to_string(),
            "5 8\n. . 7 8 4\n3 . . 1 8\n2 6 5 7 .\n5 7 6 . .\n6 5 2 . 3\n"
        );
        assert_eq!(pc.empty_count(), 8 * 5 / 5);
    }

    #[test]
    fn correspondence_ten() {
        let f = make_correspondence(10).unwrap();
        assert_eq!(f.base_colors(), 3);
        assert_eq!(f.pivot(), 2);
        assert_eq!(ids(f.image(2)), (1..=8).collect::<Vec<_>>());
        assert_eq!(ids(f.image(1)), [9, 10, 11, 12, 13]);
        assert_eq!(ids(f.image(3)), [14, 15, 16, 17, 18]);
    }

    #[test]
    fn correspondence_twenty() {
        let f = make_correspondence(20).unwrap();
        let expect: [(usize, Vec<usize>); 7] = [
            (4, (1..=8).collect()),
            (1, (9..=13).collect()),
            (2, (14..=18).collect()),
            (3, (19..=23).collect()),
            (5, (24..=28).collect()),
            (6, (29..=33).collect()),
            (7, (34..=38).collect()),
        ];
        for (i, colors) in expect {
            assert_eq!(ids(f.image(i)), colors, "f({i})");
        }
    }

    #[test]
    fn correspondence_partitions() {
        for n in (10..=60).step_by(10) {
            let f = make_correspondence(n).unwrap();
            let mut all: Vec<usize> = (1..=f.base_colors())
                .flat_map(|i| ids(f.image(i)))
                .collect();
            all.sort_unstable();
            assert_eq!(all, (1..=2 * n - 2).collect::<Vec<_>>(), "n={n}");
        }
        for n in [0, 5, 15, 25] {
            assert_eq!(
                make_correspondence(n).unwrap_err(),
                ConstructionError::NotMultipleOfTen(n)
            );
        }
    }

    #[test]
    fn block_ten_rows() {
        let pc = construct_block_ten_m(10).unwrap();
        let text = pc.to_string();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows[0], "10 18");
        assert_eq!(rows[1], ". . 7 8 4 9 10 11 12 13");
        assert_eq!(rows[6], "14 15 16 17 18 . . 7 8 4");
        assert_eq!(pc.empty_count(), 16);
        assert_eq!(pc.colored_count(), 84);
    }

    #[test]
    fn block_counts() {
        for n in [10, 20, 30] {
            let pc = construct_block_ten_m(n).unwrap();
            assert_eq!(pc.num_colors(), 2 * n - 2);
            assert_eq!(pc.empty_count(), 8 * n / 5);
        }
    }

    #[test]
    fn cyclic_blocks_are_rainbow() {
        let pc = construct_block_ten_m(20).unwrap();
        for bi in 0..4 {
            for bj in (0..4).filter(|&bj| bj != bi) {
                for line in 0..5 {
                    let row: Vec<_> = (0..5)
                        .map(|s| pc.get(Position::new(5 * bi + line + 1, 5 * bj + s + 1)))
                        .collect();
                    let col: Vec<_> = (0..5)
                        .map(|r| pc.get(Position::new(5 * bi + r + 1, 5 * bj + line + 1)))
                        .collect();
                    for cells in [row, col] {
                        let mut v: Vec<_> = cells.into_iter().map(Option::unwrap).collect();
                        v.sort();
                        v.dedup();
                        assert_eq!(v.len(), 5);
                    }
                }
            }
        }
    }

    #[test]
    fn spec_validation() {
        use ConstructionKind::*;
        assert!(ConstructionSpec::new(TwoNMinusOne, 3).is_err());
        assert!(ConstructionSpec::new(FiveEight, 6).is_err());
        assert!(ConstructionSpec::new(BlockTenM, 15).is_err());
        let spec = ConstructionSpec::new(BlockTenM, 10).unwrap();
        assert_eq!(spec.num_colors(), 18);
        assert_eq!(spec.build().unwrap().num_colors(), 18);
        assert_eq!("five-eight".parse::<ConstructionKind>().unwrap(), FiveEight);
        assert!("six-nine".parse::<ConstructionKind>().is_err());
        assert!(construct_2n_minus_1(66).is_err());
    }
}
