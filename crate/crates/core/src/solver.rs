//! Exact completion search.
//!
//! [`count_extensions`] decides whether a partial colouring has zero, one or
//! several completions. It interleaves singleton propagation with
//! backtracking on the empty cell with the fewest available colours
//! (row-major tie-break, colours ascending), and stops once `cap`
//! completions are found.
//!
//! [`enumerate_extensions`] is a deliberately plain row-major backtracker
//! with no propagation or cell ordering. It lists completions in
//! lexicographic order and doubles as an oracle for the fast path.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::color::ColorId;
use crate::grid::{PartialColoring, Position};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// No completion exists.
    Zero,
    Unique,
    /// At least two completions exist.
    Multiple,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Zero => "none",
            Verdict::Unique => "unique",
            Verdict::Multiple => "multiple",
        })
    }
}

/// Result of a completion count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub verdict: Verdict,
    /// Completions found, in discovery order, at most `cap` of them.
    pub completions: Vec<PartialColoring>,
    pub nodes_explored: u64,
}

impl ExtensionReport {
    /// The completed square when the verdict is `Unique`.
    pub fn completion(&self) -> Option<&PartialColoring> {
        match self.verdict {
            Verdict::Unique => self.completions.first(),
            _ => None,
        }
    }

    /// Two distinct completions when the verdict is `Multiple`.
    pub fn witnesses(&self) -> Option<(&PartialColoring, &PartialColoring)> {
        match (self.verdict, self.completions.as_slice()) {
            (Verdict::Multiple, [a, b, ..]) => Some((a, b)),
            _ => None,
        }
    }
}

/// The node budget ran out before the verdict was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search aborted after {nodes} nodes (budget {budget})")]
pub struct Aborted {
    pub nodes: u64,
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Stop after this many completions. Values below 2 are raised to 2.
    pub cap: usize,
    /// Abort once this many search nodes have been expanded.
    pub node_budget: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            cap: 2,
            node_budget: None,
        }
    }
}

/// Counts completions up to `cap` (at least 2).
pub fn count_extensions(pc: &PartialColoring, cap: usize) -> ExtensionReport {
    count_extensions_with(
        pc,
        &SolveOptions {
            cap,
            node_budget: None,
        },
    )
    .expect("no budget set")
}

/// [`count_extensions`] with an optional node budget.
pub fn count_extensions_with(
    pc: &PartialColoring,
    options: &SolveOptions,
) -> Result<ExtensionReport, Aborted> {
    let cap = options.cap.max(2);
    let mut search = MrvSearch {
        grid: pc.clone(),
        cap,
        budget: options.node_budget,
        nodes: 0,
        found: Vec::new(),
    };
    let empties: Vec<usize> = (0..pc.order() * pc.order())
        .filter(|&i| pc.cell_raw(i) == 0)
        .collect();
    search.run(empties)?;
    let verdict = match search.found.len() {
        0 => Verdict::Zero,
        1 => Verdict::Unique,
        _ => Verdict::Multiple,
    };
    Ok(ExtensionReport {
        verdict,
        completions: search.found,
        nodes_explored: search.nodes,
    })
}

/// Shorthand for `count_extensions(pc, 2).verdict`.
pub fn verdict(pc: &PartialColoring) -> Verdict {
    count_extensions(pc, 2).verdict
}

struct MrvSearch {
    grid: PartialColoring,
    cap: usize,
    budget: Option<u64>,
    nodes: u64,
    found: Vec<PartialColoring>,
}

impl MrvSearch {
    fn done(&self) -> bool {
        self.found.len() >= self.cap
    }

    /// `empties` is in row-major order.
    fn run(&mut self, mut empties: Vec<usize>) -> Result<(), Aborted> {
        self.nodes += 1;
        if let Some(budget) = self.budget {
            if self.nodes > budget {
                return Err(Aborted {
                    nodes: self.nodes,
                    budget,
                });
            }
        }

        // Singleton propagation to a fixpoint; a cell with nothing available
        // ends this branch.
        let mut trail = Vec::new();
        let mut dead = false;
        'fix: loop {
            let mut changed = false;
            let mut w = 0;
            for r in 0..empties.len() {
                let idx = empties[r];
                let avail = self.grid.avail_at(idx);
                match avail.len() {
                    0 => {
                        dead = true;
                        empties.truncate(w);
                        break 'fix;
                    }
                    1 => {
                        self.grid.assign(idx, avail.first().expect("non-empty"));
                        trail.push(idx);
                        changed = true;
                    }
                    _ => {
                        empties[w] = idx;
                        w += 1;
                    }
                }
            }
            empties.truncate(w);
            if !changed {
                break;
            }
        }

        let result = if dead {
            Ok(())
        } else if empties.is_empty() {
            self.found.push(self.grid.clone());
            Ok(())
        } else {
            self.branch(&empties)
        };

        for &idx in trail.iter().rev() {
            self.grid.unassign(idx);
        }
        result
    }

    fn branch(&mut self, empties: &[usize]) -> Result<(), Aborted> {
        let (slot, avail) = empties
            .iter()
            .enumerate()
            .map(|(slot, &idx)| (slot, self.grid.avail_at(idx)))
            .min_by_key(|&(slot, avail)| (avail.len(), slot))
            .expect("non-empty");
        let idx = empties[slot];
        let rest: Vec<usize> = empties
            .iter()
            .enumerate()
            .filter(|&(s, _)| s != slot)
            .map(|(_, &i)| i)
            .collect();
        for color in avail {
            self.grid.assign(idx, color);
            let r = self.run(rest.clone());
            self.grid.unassign(idx);
            r?;
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

/// Up to `cap` completions in lexicographic (row-major) order.
pub fn enumerate_extensions(pc: &PartialColoring, cap: usize) -> Vec<PartialColoring> {
    fn go(
        grid: &mut PartialColoring,
        empties: &[usize],
        cap: usize,
        out: &mut Vec<PartialColoring>,
    ) {
        let Some((&idx, rest)) = empties.split_first() else {
            out.push(grid.clone());
            return;
        };
        for color in grid.avail_at(idx) {
            grid.assign(idx, color);
            go(grid, rest, cap, out);
            grid.unassign(idx);
            if out.len() >= cap {
                return;
            }
        }
    }

    let mut out = Vec::new();
    if cap == 0 {
        return out;
    }
    let mut grid = pc.clone();
    let empties: Vec<usize> = (0..pc.order() * pc.order())
        .filter(|&i| pc.cell_raw(i) == 0)
        .collect();
    go(&mut grid, &empties, cap, &mut out);
    out
}

/// One forced assignment: the cell had exactly one available colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub position: Position,
    pub color: ColorId,
    /// 1-based propagation pass that made the assignment.
    pub pass: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TraceEnd {
    /// No empty cell has exactly one available colour.
    Fixpoint,
    /// This empty cell has no available colour left.
    Contradiction { position: Position },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropagationTrace {
    pub steps: Vec<TraceStep>,
    pub end: TraceEnd,
}

impl PropagationTrace {
    pub fn is_contradiction(&self) -> bool {
        matches!(self.end, TraceEnd::Contradiction { .. })
    }
}

impl fmt::Display for PropagationTrace {
    /// One `(row,col) <- color` line per step, then a `#` terminal line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{} <- {}", s.position, s.color)?;
        }
        match self.end {
            TraceEnd::Fixpoint => writeln!(f, "# fixpoint"),
            TraceEnd::Contradiction { position } => writeln!(f, "# contradiction at {position}"),
        }
    }
}

/// Colours forced cells pass by pass until no empty cell has exactly one
/// available colour, or some empty cell has none.
///
/// Each pass collects every singleton cell of the current grid and colours
/// them in row-major order, re-checking each one first: two cells of a line
/// forced to the same colour surface as a contradiction on the second.
pub fn propagate_singletons(pc: &PartialColoring) -> (PartialColoring, PropagationTrace) {
    let mut grid = pc.clone();
    let mut steps = Vec::new();
    let cells = pc.order() * pc.order();
    let mut pass = 0;
    let end = 'outer: loop {
        pass += 1;
        let mut forced: Vec<(usize, ColorId)> = Vec::new();
        for idx in (0..cells).filter(|&i| grid.cell_raw(i) == 0) {
            let avail = grid.avail_at(idx);
            if avail.is_empty() {
                break 'outer TraceEnd::Contradiction {
                    position: grid.position(idx),
                };
            }
            if let Some(c) = avail.single() {
                forced.push((idx, c));
            }
        }
        if forced.is_empty() {
            break TraceEnd::Fixpoint;
        }
        for (idx, color) in forced {
            if !grid.avail_at(idx).contains(color) {
                break 'outer TraceEnd::Contradiction {
                    position: grid.position(idx),
                };
            }
            grid.assign(idx, color);
            steps.push(TraceStep {
                position: grid.position(idx),
                color,
                pass,
            });
        }
    };
    (grid, PropagationTrace { steps, end })
}

/// Checks that every step of `trace` was forced when it was applied to `pc`.
pub fn replay_trace(pc: &PartialColoring, trace: &PropagationTrace) -> bool {
    let mut grid = pc.clone();
    for step in &trace.steps {
        match grid.available_colors(step.position) {
            Ok(avail) if avail.single() == Some(step.color) => {}
            _ => return false,
        }
        grid.set(step.position, step.color)
            .expect("available colour");
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(text: &str) -> PartialColoring {
        text.parse().unwrap()
    }

    const FIVE_EIGHT: &str = "5 8\n. . 7 8 4\n3 . . 1 8\n2 6 5 7 .\n5 7 6 . .\n6 5 2 . 3\n";
    const FIVE_EIGHT_DONE: &str = "5 8\n1 3 7 8 4\n3 2 4 1 8\n2 6 5 7 1\n5 7 6 3 2\n6 5 2 4 3\n";

    #[test]
    fn five_eight_is_unique() {
        let rep = count_extensions(&grid(FIVE_EIGHT), 2);
        assert_eq!(rep.verdict, Verdict::Unique);
        assert_eq!(rep.completion().unwrap().to_string(), FIVE_EIGHT_DONE);
        assert!(rep.witnesses().is_none());
    }

    #[test]
    fn trivial_cases() {
        let rep = count_extensions(&grid("1 1\n.\n"), 2);
        assert_eq!(rep.verdict, Verdict::Unique);
        assert_eq!(rep.completion().unwrap().to_string(), "1 1\n1\n");
        assert_eq!(verdict(&grid("1 2\n.\n")), Verdict::Multiple);
        assert_eq!(verdict(&grid("2 1\n. .\n. .\n")), Verdict::Zero);
    }

    #[test]
    fn two_by_two_three_colors_is_multiple() {
        // Brute force over all 3^4 fillings of the empty 2x2 grid.
        let mut proper = 0;
        for code in 0..81u32 {
            let v: Vec<u32> = (0..4).map(|i| code / 3u32.pow(i) % 3).collect();
            if v[0] != v[1] && v[2] != v[3] && v[0] != v[2] && v[1] != v[3] {
                proper += 1;
            }
        }
        assert_eq!(proper, 18);
        let rep = count_extensions(&grid("2 3\n. .\n. .\n"), 2);
        assert_eq!(rep.verdict, Verdict::Multiple);
        let (a, b) = rep.witnesses().unwrap();
        assert_ne!(a, b);
        assert!(a.is_complete() && b.is_complete());
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_extensions(&grid(FIVE_EIGHT), 10).len(), 1);
        assert_eq!(enumerate_extensions(&grid("1 3\n.\n"), 10).len(), 3);
        let two = enumerate_extensions(&grid("2 2\n. .\n. .\n"), 10);
        let text: Vec<String> = two.iter().map(|g| g.to_string()).collect();
        assert_eq!(text, ["2 2\n1 2\n2 1\n", "2 2\n2 1\n1 2\n"]);
        assert!(enumerate_extensions(&grid("1 3\n.\n"), 0).is_empty());
        assert_eq!(
            enumerate_extensions(&grid("2 3\n. .\n. .\n"), 100).len(),
            18
        );
    }

    #[test]
    fn cap_limits_completions() {
        let rep = count_extensions(&grid("2 3\n. .\n. .\n"), 5);
        assert_eq!(rep.completions.len(), 5);
        let rep = count_extensions(&grid("2 3\n. .\n. .\n"), 0);
        assert_eq!(rep.completions.len(), 2);
    }

    #[test]
    fn node_budget_aborts() {
        let pc = grid("4 7\n. . . .\n. . . .\n. . . .\n. . . .\n");
        let opts = SolveOptions {
            cap: 1000,
            node_budget: Some(5),
        };
        let err = count_extensions_with(&pc, &opts).unwrap_err();
        assert_eq!(err.budget, 5);
        let opts = SolveOptions {
            cap: 2,
            node_budget: Some(1_000),
        };
        assert_eq!(
            count_extensions_with(&grid(FIVE_EIGHT), &opts)
                .unwrap()
                .verdict,
            Verdict::Unique
        );
    }

    #[test]
    fn five_eight_propagation_passes() {
        let pc = grid(FIVE_EIGHT);
        let (done, trace) = propagate_singletons(&pc);
        assert_eq!(trace.end, TraceEnd::Fixpoint);
        let got: Vec<(usize, usize, usize, usize)> = trace
            .steps
            .iter()
            .map(|s| (s.pass, s.position.row, s.position.col, s.color.get()))
            .collect();
        assert_eq!(
            got,
            [
                (1, 1, 1, 1),
                (1, 2, 3, 4),
                (1, 3, 5, 1),
                (1, 5, 4, 4),
                (2, 2, 2, 2),
                (2, 4, 5, 2),
                (3, 1, 2, 3),
                (3, 4, 4, 3),
            ]
        );
        assert_eq!(done.to_string(), FIVE_EIGHT_DONE);
        assert!(replay_trace(&pc, &trace));
        assert_eq!(trace.to_string().lines().next().unwrap(), "(1,1) <- 1");
        assert!(trace.to_string().ends_with("# fixpoint\n"));
    }

    #[test]
    fn propagation_on_full_grid_is_noop() {
        let pc = grid(FIVE_EIGHT_DONE);
        let (out, trace) = propagate_singletons(&pc);
        assert_eq!(out, pc);
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn propagation_contradiction() {
        let pc = grid("2 2\n1 .\n. 2\n");
        let (_, trace) = propagate_singletons(&pc);
        assert_eq!(
            trace.end,
            TraceEnd::Contradiction {
                position: Position::new(1, 2)
            }
        );
        assert_eq!(verdict(&pc), Verdict::Zero);

        // Two cells of one row forced to the same colour.
        let pc = grid("3 3\n. . 3\n1 . .\n. 1 .\n");
        let (_, trace) = propagate_singletons(&pc);
        assert_eq!(
            trace.end,
            TraceEnd::Contradiction {
                position: Position::new(1, 2)
            }
        );
        assert_eq!(verdict(&pc), Verdict::Zero);
    }

    #[test]
    fn trace_replay_detects_tampering() {
        let pc = grid(FIVE_EIGHT);
        let (_, mut trace) = propagate_singletons(&pc);
        trace.steps.swap(0, 4);
        assert!(!replay_trace(&pc, &trace));
    }
}
