//! Forbidden patterns in symbol matrices and the edit distance to
//! pattern-free matrices.
//!
//! A *pattern* is a partition of a `k x l` grid into `r` classes. A matrix
//! contains the pattern when some choice of `k` rows and `l` columns gives a
//! submatrix whose entries agree exactly within classes. This crate detects
//! such occurrences, computes how many entries must change to remove all of
//! them, and runs the experiments comparing that cost with
//! `((s - r + 1) / s) * m * n` for `m x n` matrices over `s` symbols.
//!
//! Modules:
//!
//! * [`pattern`], [`matrix`], [`text`]: the domain types and file formats.
//! * [`containment`]: occurrence search, enumeration and disjoint packings.
//! * [`editing`]: the class-merging upper bound, the exact solver, the
//!   brute-force oracle and the exhaustive extremal function.
//! * [`graphs`]: the edge-colored `K_{m,n}` view, densities and
//!   epsilon-regularity checks.
//! * [`experiments`]: seeded generation and Monte Carlo sweeps.
//! * [`cli`]: the `pattern-edit` command line.

pub mod cli;
pub mod containment;
pub mod editing;
pub mod error;
pub mod experiments;
pub mod graphs;
pub mod limits;
pub mod matrix;
pub mod pattern;
pub mod text;

pub use containment::{
    contains, contains_any, enumerate_occurrences, find_occurrence, pack_disjoint, Mode,
    Occurrence, OccurrenceQuery,
};
pub use editing::{
    brute_force_min_edit, extremal_f, merge_smallest_classes, min_edit_distance,
    theoretical_bound, Edit, EditOutcome, EditPlan, ExtremalReport, SolverOptions,
};
pub use error::{Error, Result};
pub use experiments::{corollary3_sweep, estimate_f_monte_carlo, random_coloring, ExperimentConfig, TrendReport};
pub use graphs::{coloring_occurs, is_epsilon_regular, to_coloring, to_matrix, Checker, ColoredPair, Epsilon, RegularityVerdict};
pub use limits::Limits;
pub use matrix::{same_pattern, Symbol, SymbolMatrix};
pub use pattern::{Cell, Pattern};
