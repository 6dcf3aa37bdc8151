//! Generalized Latin squares `L(n, k)`: `n x n` grids coloured with `k`
//! colours so that no row or column repeats a colour.
//!
//! The crate covers partial colourings and their available colours
//! ([`grid`]), an exact completion counter ([`solver`]), explicit uniquely
//! completable constructions ([`constructions`]), detectors for empty-cell
//! patterns that forbid a unique completion ([`patterns`]) and an exhaustive
//! defining-number search for tiny squares ([`search`]).

pub mod color;
pub mod constructions;
pub mod format;
pub mod grid;
pub mod patterns;
pub mod search;
pub mod solver;

pub use color::{ColorId, ColorSet, MAX_COLORS};
pub use constructions::{
    construct_2n_minus_1, construct_block_ten_m, construct_five_eight, make_correspondence,
    ColorCorrespondence, ConstructionError, ConstructionKind, ConstructionSpec,
};
pub use format::{parse_grid, ParseError};
pub use grid::{GridError, PartialColoring, Position, RowColUnion, MAX_ORDER};
pub use patterns::{
    check_uncolored_bound, detect_all, detect_config2, detect_lemma3_chain, detect_rectangle,
    detect_three_in_line, Orientation, PatternError, PatternKind, PatternWitness,
};
pub use search::{
    defining_number, known_defining_number, min_defining_set_for_square, DefiningSet, SearchError,
    SearchOptions, SearchResult,
};
pub use solver::{
    count_extensions, count_extensions_with, enumerate_extensions, propagate_singletons, Aborted,
    ExtensionReport, PropagationTrace, SolveOptions, TraceEnd, TraceStep, Verdict,
};
