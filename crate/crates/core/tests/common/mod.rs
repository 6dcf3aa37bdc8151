#![allow(dead_code)]

use defset_core::{ColorId, PartialColoring, Position};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn grid(text: &str) -> PartialColoring {
    text.parse().expect("valid grid")
}

/// Properness checked from scratch, without the grid's own bookkeeping.
#[allow(clippy::needless_range_loop)] // i indexes both a row and a column
pub fn is_proper(pc: &PartialColoring) -> bool {
    let rows = pc.to_rows();
    let n = pc.order();
    for i in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if rows[i][a].is_some() && rows[i][a] == rows[i][b] {
                    return false;
                }
                if rows[a][i].is_some() && rows[a][i] == rows[b][i] {
                    return false;
                }
            }
        }
    }
    true
}

/// A uniformly shuffled backtracking fill of an empty `n x n` grid.
pub fn random_square<R: Rng>(n: usize, k: usize, rng: &mut R) -> PartialColoring {
    fn go<R: Rng>(pc: &mut PartialColoring, idx: usize, rng: &mut R) -> bool {
        let n = pc.order();
        if idx == n * n {
            return true;
        }
        let p = Position::new(idx / n + 1, idx % n + 1);
        let mut colors: Vec<ColorId> = pc.available_colors(p).unwrap().iter().collect();
        colors.shuffle(rng);
        for c in colors {
            pc.set(p, c).unwrap();
            if go(pc, idx + 1, rng) {
                return true;
            }
            pc.clear(p).unwrap();
        }
        false
    }
    let mut pc = PartialColoring::empty(n, k).unwrap();
    assert!(go(&mut pc, 0, rng), "L({n},{k}) is empty");
    pc
}

/// Empties each cell independently with probability `p`.
pub fn random_holes<R: Rng>(square: &PartialColoring, p: f64, rng: &mut R) -> PartialColoring {
    let mut pc = square.clone();
    for pos in all_positions(pc.order()) {
        if rng.gen_bool(p) {
            pc.clear(pos).unwrap();
        }
    }
    pc
}

/// Empties exactly `count` cells chosen at random.
pub fn random_holes_exact<R: Rng>(
    square: &PartialColoring,
    count: usize,
    rng: &mut R,
) -> PartialColoring {
    let mut pc = square.clone();
    let mut cells = all_positions(pc.order());
    cells.shuffle(rng);
    for &pos in cells.iter().take(count) {
        pc.clear(pos).unwrap();
    }
    pc
}

/// Random colours dropped on random cells, skipping clashes. Often has no completion.
pub fn random_proper<R: Rng>(n: usize, k: usize, attempts: usize, rng: &mut R) -> PartialColoring {
    let mut pc = PartialColoring::empty(n, k).unwrap();
    for _ in 0..attempts {
        let p = Position::new(rng.gen_range(1..=n), rng.gen_range(1..=n));
        let c = ColorId::new(rng.gen_range(1..=k)).unwrap();
        let _ = pc.set(p, c);
    }
    pc
}

pub fn all_positions(n: usize) -> Vec<Position> {
    (1..=n)
        .flat_map(|r| (1..=n).map(move |c| Position::new(r, c)))
        .collect()
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    v
}

/// Inverse of a 1-based permutation.
pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p - 1] = i + 1;
    }
    inv
}

pub const BLOCK_TEN_PARTIAL: &str = "\
10 18
. . 7 8 4 9 10 11 12 13
3 . . 1 8 10 11 12 13 9
2 6 5 7 . 11 12 13 9 10
5 7 6 . . 12 13 9 10 11
6 5 2 . 3 13 9 10 11 12
14 15 16 17 18 . . 7 8 4
15 16 17 18 14 3 . . 1 8
16 17 18 14 15 2 6 5 7 .
17 18 14 15 16 5 7 6 . .
18 14 15 16 17 6 5 2 . 3
";

pub const BLOCK_TEN_COMPLETE: &str = "\
10 18
1 3 7 8 4 9 10 11 12 13
3 2 4 1 8 10 11 12 13 9
2 6 5 7 1 11 12 13 9 10
5 7 6 3 2 12 13 9 10 11
6 5 2 4 3 13 9 10 11 12
14 15 16 17 18 1 3 7 8 4
15 16 17 18 14 3 2 4 1 8
16 17 18 14 15 2 6 5 7 1
17 18 14 15 16 5 7 6 3 2
18 14 15 16 17 6 5 2 4 3
";
