//! Python bindings: the grid type, the constructions, the completion
//! solver, the pattern detectors and the defining-number search.

use defset_core as core;
use defset_core::{ColorId, Position, TraceEnd, Verdict};
use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(defset, BudgetExceeded, pyo3::exceptions::PyRuntimeError);

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn color(c: usize) -> PyResult<ColorId> {
    ColorId::new(c).ok_or_else(|| PyValueError::new_err("colours start at 1"))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Zero => "none",
        Verdict::Unique => "unique",
        Verdict::Multiple => "multiple",
    }
}

/// A partial colouring of an n x n grid with colours 1..=k, no colour
/// repeated in a row or column. Rows and columns are 1-based.
#[pyclass(
    name = "PartialColoring",
    module = "defset",
    eq,
    frozen,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyPartialColoring(core::PartialColoring);

#[pymethods]
impl PyPartialColoring {
    /// `entries` is an iterable of `(row, col, colour)` triples.
    #[new]
    #[pyo3(signature = (n, k, entries = Vec::new()))]
    fn new(n: usize, k: usize, entries: Vec<(usize, usize, usize)>) -> PyResult<Self> {
        let cells = entries
            .into_iter()
            .map(|(r, c, v)| Ok((Position::new(r, c), color(v)?)))
            .collect::<PyResult<Vec<_>>>()?;
        core::PartialColoring::new(n, k, cells)
            .map(Self)
            .map_err(value_err)
    }

    /// Parse the text format: a line `n k`, then n rows of colours or `.`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::parse_grid(text).map(Self).map_err(value_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.num_colors()
    }

    #[getter]
    fn empty_count(&self) -> usize {
        self.0.empty_count()
    }

    #[getter]
    fn colored_count(&self) -> usize {
        self.0.colored_count()
    }

    fn is_complete(&self) -> bool {
        self.0.is_complete()
    }

    fn get(&self, row: usize, col: usize) -> PyResult<Option<usize>> {
        self.check(row, col)?;
        Ok(self.0.get(Position::new(row, col)).map(ColorId::get))
    }

    /// A copy with one more cell coloured.
    fn with_cell(&self, row: usize, col: usize, colour: usize) -> PyResult<Self> {
        let mut pc = self.0.clone();
        pc.set(Position::new(row, col), color(colour)?)
            .map_err(value_err)?;
        Ok(Self(pc))
    }

    /// A copy with one cell emptied.
    fn without_cell(&self, row: usize, col: usize) -> PyResult<Self> {
        let mut pc = self.0.clone();
        pc.clear(Position::new(row, col)).map_err(value_err)?;
        Ok(Self(pc))
    }

    fn rows(&self) -> Vec<Vec<Option<usize>>> {
        self.0
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|c| c.map(ColorId::get)).collect())
            .collect()
    }

    fn entries(&self) -> Vec<(usize, usize, usize)> {
        self.0
            .entries()
            .map(|(p, c)| (p.row, p.col, c.get()))
            .collect()
    }

    fn uncolored_cells(&self) -> Vec<(usize, usize)> {
        self.0
            .uncolored_cells()
            .into_iter()
            .map(|p| (p.row, p.col))
            .collect()
    }

    /// Colours absent from both the row and the column of an empty cell.
    fn available_colors(&self, row: usize, col: usize) -> PyResult<Vec<usize>> {
        let set = self
            .0
            .available_colors(Position::new(row, col))
            .map_err(value_err)?;
        Ok(set.iter().map(ColorId::get).collect())
    }

    /// Row r moves to `row_perm[r-1]`, column c to `col_perm[c-1]`.
    fn permute(&self, row_perm: Vec<usize>, col_perm: Vec<usize>) -> PyResult<Self> {
        self.0
            .permute(&row_perm, &col_perm)
            .map(Self)
            .map_err(value_err)
    }

    /// Colour c becomes `color_map[c-1]`.
    fn relabel(&self, color_map: Vec<usize>) -> PyResult<Self> {
        self.0.relabel(&color_map).map(Self).map_err(value_err)
    }

    fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    fn to_text(&self) -> String {
        self.0.to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "PartialColoring(n={}, k={}, colored={})",
            self.0.order(),
            self.0.num_colors(),
            self.0.colored_count()
        )
    }
}

impl PyPartialColoring {
    fn check(&self, row: usize, col: usize) -> PyResult<()> {
        let n = self.0.order();
        if (1..=n).contains(&row) && (1..=n).contains(&col) {
            Ok(())
        } else {
            Err(PyIndexError::new_err(format!(
                "({row},{col}) outside a {n}x{n} grid"
            )))
        }
    }
}

#[pyclass(name = "ExtensionReport", module = "defset", frozen, get_all)]
struct PyExtensionReport {
    /// "none", "unique" or "multiple".
    verdict: &'static str,
    completions: Vec<PyPartialColoring>,
    nodes_explored: u64,
}

#[pymethods]
impl PyExtensionReport {
    #[getter]
    fn completion(&self) -> Option<PyPartialColoring> {
        (self.verdict == "unique").then(|| self.completions[0].clone())
    }

    fn __repr__(&self) -> String {
        format!(
            "ExtensionReport(verdict={:?}, completions={}, nodes_explored={})",
            self.verdict,
            self.completions.len(),
            self.nodes_explored
        )
    }
}

/// Build a named construction: "two-n-minus-one", "five-eight" or "block-ten-m".
#[pyfunction]
#[pyo3(signature = (kind, n = None))]
fn construct(kind: &str, n: Option<usize>) -> PyResult<PyPartialColoring> {
    let kind: core::ConstructionKind = kind.parse().map_err(value_err)?;
    let spec =
        core::ConstructionSpec::new(kind, n.unwrap_or(kind.smallest_order())).map_err(value_err)?;
    spec.build().map(PyPartialColoring).map_err(value_err)
}

#[pyfunction]
fn construct_2n_minus_1(n: usize) -> PyResult<PyPartialColoring> {
    core::construct_2n_minus_1(n)
        .map(PyPartialColoring)
        .map_err(value_err)
}

#[pyfunction]
fn construct_five_eight() -> PyPartialColoring {
    PyPartialColoring(core::construct_five_eight())
}

#[pyfunction]
fn construct_block_ten_m(n: usize) -> PyResult<PyPartialColoring> {
    core::construct_block_ten_m(n)
        .map(PyPartialColoring)
        .map_err(value_err)
}

/// Count completions up to `cap`. Raises `BudgetExceeded` once more than
/// `node_budget` search nodes are needed.
#[pyfunction]
#[pyo3(signature = (pc, cap = 2, node_budget = None))]
fn count_extensions(
    py: Python<'_>,
    pc: &PyPartialColoring,
    cap: usize,
    node_budget: Option<u64>,
) -> PyResult<PyExtensionReport> {
    let opts = core::SolveOptions { cap, node_budget };
    let grid = pc.0.clone();
    let rep = py
        .detach(move || core::count_extensions_with(&grid, &opts))
        .map_err(|e| BudgetExceeded::new_err(e.to_string()))?;
    Ok(PyExtensionReport {
        verdict: verdict_name(rep.verdict),
        completions: rep.completions.into_iter().map(PyPartialColoring).collect(),
        nodes_explored: rep.nodes_explored,
    })
}

/// "none", "unique" or "multiple".
#[pyfunction]
fn verify(py: Python<'_>, pc: &PyPartialColoring) -> &'static str {
    let grid = pc.0.clone();
    verdict_name(py.detach(move || core::solver::verdict(&grid)))
}

/// Completions in lexicographic order, at most `cap` of them.
#[pyfunction]
fn enumerate_extensions(
    py: Python<'_>,
    pc: &PyPartialColoring,
    cap: usize,
) -> Vec<PyPartialColoring> {
    let grid = pc.0.clone();
    py.detach(move || core::enumerate_extensions(&grid, cap))
        .into_iter()
        .map(PyPartialColoring)
        .collect()
}

/// Returns `(grid, steps, contradiction)`: the propagated grid, the forced
/// assignments as `(row, col, colour, pass)` and the cell left without
/// colours, if any.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn propagate(
    pc: &PyPartialColoring,
) -> (
    PyPartialColoring,
    Vec<(usize, usize, usize, usize)>,
    Option<(usize, usize)>,
) {
    let (after, trace) = core::propagate_singletons(&pc.0);
    let steps = trace
        .steps
        .iter()
        .map(|s| (s.position.row, s.position.col, s.color.get(), s.pass))
        .collect();
    let end = match trace.end {
        TraceEnd::Fixpoint => None,
        TraceEnd::Contradiction { position } => Some((position.row, position.col)),
    };
    (PyPartialColoring(after), steps, end)
}

fn witness_dict<'py>(py: Python<'py>, w: &core::PatternWitness) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("pattern", w.pattern.name())?;
    d.set_item(
        "positions",
        w.positions
            .iter()
            .map(|p| (p.row, p.col))
            .collect::<Vec<_>>(),
    )?;
    d.set_item("rows", &w.rows)?;
    d.set_item("cols", &w.cols)?;
    let sets: Vec<Vec<usize>> = w
        .available_sets
        .iter()
        .map(|s| s.iter().map(ColorId::get).collect())
        .collect();
    d.set_item("available_sets", sets)?;
    d.set_item(
        "transposed",
        matches!(w.orientation, core::Orientation::Transposed),
    )?;
    Ok(d)
}

fn detect_one<'py>(
    py: Python<'py>,
    found: Option<core::PatternWitness>,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    found.map(|w| witness_dict(py, &w)).transpose()
}

#[pyfunction]
fn detect_three_in_line<'py>(
    py: Python<'py>,
    pc: &PyPartialColoring,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    detect_one(py, core::detect_three_in_line(&pc.0))
}

#[pyfunction]
fn detect_rectangle<'py>(
    py: Python<'py>,
    pc: &PyPartialColoring,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    detect_one(py, core::detect_rectangle(&pc.0))
}

#[pyfunction]
fn detect_lemma3_chain<'py>(
    py: Python<'py>,
    pc: &PyPartialColoring,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    detect_one(py, core::detect_lemma3_chain(&pc.0))
}

#[pyfunction]
fn detect_config2<'py>(
    py: Python<'py>,
    pc: &PyPartialColoring,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    detect_one(py, core::detect_config2(&pc.0))
}

/// Every pattern found, one witness per kind.
#[pyfunction]
fn detect_all<'py>(py: Python<'py>, pc: &PyPartialColoring) -> PyResult<Vec<Bound<'py, PyDict>>> {
    core::detect_all(&pc.0)
        .iter()
        .map(|w| witness_dict(py, w))
        .collect()
}

/// Whether the empty-cell count is within the bound for `k = 2n - 2`.
#[pyfunction]
fn check_uncolored_bound(pc: &PyPartialColoring) -> PyResult<bool> {
    core::check_uncolored_bound(&pc.0).map_err(value_err)
}

/// Smallest defining set over all squares of `L(n, k)`.
///
/// Returns a dict with `n`, `k`, `d`, `witness`, `known` (closed-form value
/// or None) and `squares_examined`.
#[pyfunction]
#[pyo3(signature = (n, k, symmetry = true, prune = true, budget = 1e10, threads = None))]
fn defining_number<'py>(
    py: Python<'py>,
    n: usize,
    k: usize,
    symmetry: bool,
    prune: bool,
    budget: f64,
    threads: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = core::SearchOptions {
        symmetry,
        prune,
        work_budget: budget,
        threads,
    };
    let res = py
        .detach(move || core::defining_number(n, k, &opts))
        .map_err(|e| match e {
            core::SearchError::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
            other => value_err(other),
        })?;
    let d = PyDict::new(py);
    d.set_item("n", res.n)?;
    d.set_item("k", res.k)?;
    d.set_item("d", res.d_value)?;
    d.set_item("witness", PyPartialColoring(res.witness))?;
    d.set_item("known", res.known_value)?;
    d.set_item("squares_examined", res.squares_examined)?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "defset")]
fn defset_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartialColoring>()?;
    m.add_class::<PyExtensionReport>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(construct_2n_minus_1, m)?)?;
    m.add_function(wrap_pyfunction!(construct_five_eight, m)?)?;
    m.add_function(wrap_pyfunction!(construct_block_ten_m, m)?)?;
    m.add_function(wrap_pyfunction!(count_extensions, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_extensions, m)?)?;
    m.add_function(wrap_pyfunction!(propagate, m)?)?;
    m.add_function(wrap_pyfunction!(detect_three_in_line, m)?)?;
    m.add_function(wrap_pyfunction!(detect_rectangle, m)?)?;
    m.add_function(wrap_pyfunction!(detect_lemma3_chain, m)?)?;
    m.add_function(wrap_pyfunction!(detect_config2, m)?)?;
    m.add_function(wrap_pyfunction!(detect_all, m)?)?;
    m.add_function(wrap_pyfunction!(check_uncolored_bound, m)?)?;
    m.add_function(wrap_pyfunction!(defining_number, m)?)?;
    Ok(())
}
