//! Exhaustive search for minimum defining sets of tiny squares.
//!
//! [`defining_number`] enumerates every completed square of `L(n, k)` up to
//! row permutation, column permutation and colour renaming, and takes the
//! smallest defining set over the representatives. All three symmetries map
//! `L(n, k)` onto itself and preserve unique completability, so the minimum
//! is unchanged.
//!
//! For a single square, [`min_defining_set_for_square`] walks subsets of
//! coloured cells by increasing size. The first size with a uniquely
//! completing subset is the answer; that level is still scanned to the end
//! so the reported witness is the lexicographically least one (row-major,
//! empty below every colour).

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::grid::{GridError, PartialColoring};
use crate::patterns::{detect_rectangle, detect_three_in_line};
use crate::solver::{verdict, Verdict};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("estimated work {estimate:.3e} exceeds the budget {budget:.3e}")]
    BudgetExceeded { estimate: f64, budget: f64 },
    #[error("square is not fully coloured")]
    NotFullyColored,
    #[error("L({n},{k}) is empty: fewer colours than the order")]
    NoSquares { n: usize, k: usize },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    /// Reduce squares up to row/column permutation and colour renaming.
    pub symmetry: bool,
    /// Skip subsets whose empty cells contain three in a line or a rectangle.
    /// Only applied when `k >= 2n - 2`, where those patterns provably block
    /// a unique completion.
    pub prune: bool,
    /// Upper limit for [`estimate_work`].
    pub work_budget: f64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry: true,
            prune: true,
            work_budget: 1e10,
            threads: None,
        }
    }
}

/// Minimum defining set of one square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    pub size: usize,
    pub witness: PartialColoring,
    pub subsets_examined: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub d_value: usize,
    /// A partial colouring with `d_value` coloured cells that completes uniquely.
    pub witness: PartialColoring,
    pub squares_examined: u64,
    /// Subsets handed to the solver. Depends on scheduling when run in parallel.
    pub subsets_examined: u64,
    /// The known closed-form value for these parameters, if any.
    pub known_value: Option<usize>,
}

/// Closed-form defining numbers known for these parameters:
/// `n^2` for `k > 2n - 1`; `n^2 - n` (n even) or `n^2 - n + 1` (n odd, n > 1)
/// for `k = 2n - 1`; `n^2 - 8n/5` for `k = 2n - 2` with `n = 5` or `10 | n`.
pub fn known_defining_number(n: usize, k: usize) -> Option<usize> {
    if n == 0 {
        return None;
    }
    let sq = n * n;
    if k > 2 * n - 1 {
        Some(sq)
    } else if k == 2 * n - 1 {
        match n {
            1 => Some(0),
            _ if n.is_multiple_of(2) => Some(sq - n),
            _ => Some(sq - n + 1),
        }
    } else if k + 2 == 2 * n && (n == 5 || n.is_multiple_of(10)) {
        Some(sq - 8 * n / 5)
    } else {
        None
    }
}

/// Row-count product times subset count: `P(k,n)^(n-1) * 2^(n^2)`.
pub fn estimate_work(n: usize, k: usize) -> f64 {
    let rows: f64 = (0..n).map(|i| k.saturating_sub(i) as f64).product();
    rows.powi(n.saturating_sub(1) as i32) * 2f64.powi((n * n) as i32)
}

fn pruning_applies(n: usize, k: usize) -> bool {
    k + 2 >= 2 * n
}

/// Smallest set of cells of `square` whose colours force the whole square.
pub fn min_defining_set_for_square(
    square: &PartialColoring,
    prune: bool,
) -> Result<DefiningSet, SearchError> {
    if !square.is_complete() {
        return Err(SearchError::NotFullyColored);
    }
    let counter = AtomicU64::new(0);
    let (size, witness) = scan_levels(square, prune, usize::MAX, &counter)
        .expect("the full square always defines itself");
    Ok(DefiningSet {
        size,
        witness,
        subsets_examined: counter.into_inner(),
    })
}

/// Scans coloured-cell counts `0..=limit`; returns the first level with a
/// unique subset and the least witness on it.
fn scan_levels(
    square: &PartialColoring,
    prune: bool,
    limit: usize,
    counter: &AtomicU64,
) -> Option<(usize, PartialColoring)> {
    let n = square.order();
    let k = square.num_colors();
    let cells = n * n;
    let full = square.raw_cells();
    let prune = prune && pruning_applies(n, k);
    let mut buf = vec![0u8; cells];

    for level in 0..=cells.min(limit) {
        let mut best: Option<Vec<u8>> = None;
        for subset in (0..cells).combinations(level) {
            buf.fill(0);
            for &i in &subset {
                buf[i] = full[i];
            }
            let pc = PartialColoring::from_raw_unchecked(n, k, &buf);
            if prune && (detect_three_in_line(&pc).is_some() || detect_rectangle(&pc).is_some()) {
                continue;
            }
            counter.fetch_add(1, Ordering::Relaxed);
            if verdict(&pc) == Verdict::Unique && best.as_deref().is_none_or(|b| buf[..] < b[..]) {
                best = Some(buf.clone());
            }
        }
        if let Some(b) = best {
            return Some((level, PartialColoring::from_raw_unchecked(n, k, &b)));
        }
    }
    None
}

/// Every completed square of `L(n, k)`, row-major lexicographic. With
/// `reduced`, only squares whose first row is `1..=n` and whose remaining
/// rows are sorted by their first entry.
pub fn enumerate_squares(
    n: usize,
    k: usize,
    reduced: bool,
) -> Result<Vec<PartialColoring>, SearchError> {
    let mut start = PartialColoring::empty(n, k)?;
    if k < n {
        return Ok(Vec::new());
    }
    let mut first = 0;
    if reduced {
        for c in 0..n {
            start.assign(c, crate::color::ColorId::new(c + 1).expect("k <= 128"));
        }
        first = n;
    }

    fn go(grid: &mut PartialColoring, idx: usize, reduced: bool, out: &mut Vec<PartialColoring>) {
        let n = grid.order();
        if idx == n * n {
            out.push(grid.clone());
            return;
        }
        let floor = if reduced && idx.is_multiple_of(n) && idx >= 2 * n {
            grid.cell_raw(idx - n)
        } else {
            0
        };
        for color in grid.avail_at(idx) {
            if color.raw() <= floor {
                continue;
            }
            grid.assign(idx, color);
            go(grid, idx + 1, reduced, out);
            grid.unassign(idx);
        }
    }

    let mut out = Vec::new();
    go(&mut start, first, reduced, &mut out);
    Ok(out)
}

/// Orbit invariant under row/column permutation and colour renaming: the
/// least row-major code over all row and column permutations, with colours
/// renamed in order of first appearance.
pub fn canonical_key(square: &PartialColoring) -> Vec<u8> {
    let n = square.order();
    let cells = square.raw_cells();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut best: Option<Vec<u8>> = None;
    let mut key = vec![0u8; n * n];
    let mut rename = vec![0u8; square.num_colors() + 1];
    for rp in &perms {
        for cp in &perms {
            rename.fill(0);
            let mut next = 1u8;
            for r in 0..n {
                for c in 0..n {
                    let v = cells[rp[r] * n + cp[c]];
                    key[r * n + c] = if v == 0 {
                        0
                    } else {
                        if rename[v as usize] == 0 {
                            rename[v as usize] = next;
                            next += 1;
                        }
                        rename[v as usize]
                    };
                }
            }
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key.clone());
            }
        }
    }
    best.expect("at least one permutation")
}

/// Representatives of the symmetry classes of `L(n, k)`.
pub fn canonical_squares(n: usize, k: usize) -> Result<Vec<PartialColoring>, SearchError> {
    let mut keyed: Vec<(Vec<u8>, PartialColoring)> = enumerate_squares(n, k, true)?
        .into_iter()
        .map(|sq| (canonical_key(&sq), sq))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(keyed.into_iter().map(|(_, sq)| sq).collect())
}

/// The defining number `d(L(n, k))` by exhaustive search.
pub fn defining_number(
    n: usize,
    k: usize,
    options: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    PartialColoring::empty(n, k)?;
    if k < n {
        return Err(SearchError::NoSquares { n, k });
    }
    let estimate = estimate_work(n, k);
    if estimate > options.work_budget {
        return Err(SearchError::BudgetExceeded {
            estimate,
            budget: options.work_budget,
        });
    }
    let squares = if options.symmetry {
        canonical_squares(n, k)?
    } else {
        enumerate_squares(n, k, false)?
    };

    let bound = AtomicUsize::new(usize::MAX);
    let subsets = AtomicU64::new(0);
    let run = || {
        squares
            .par_iter()
            .filter_map(|sq| {
                let limit = bound.load(Ordering::Relaxed);
                let (size, witness) = scan_levels(sq, options.prune, limit, &subsets)?;
                bound.fetch_min(size, Ordering::Relaxed);
                Some((size, witness))
            })
            .min_by(|a, b| (a.0, a.1.raw_cells()).cmp(&(b.0, b.1.raw_cells())))
    };
    let best = match options.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| SearchError::ThreadPool(e.to_string()))?
            .install(run),
        None => run(),
    };
    let (d_value, witness) = best.expect("every square defines itself");
    Ok(SearchResult {
        n,
        k,
        d_value,
        witness,
        squares_examined: squares.len() as u64,
        subsets_examined: subsets.into_inner(),
        known_value: known_defining_number(n, k),
    })
}
