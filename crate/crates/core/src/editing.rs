//! Edit plans that destroy every occurrence of a pattern.
//!
//! Three routes to the edit distance `Dist(M, Forb)`:
//!
//! * [`merge_smallest_classes`] recolors the `s - r + 1` smallest symbol
//!   classes into the largest one. What remains uses at most `r - 1`
//!   symbols, so no `r`-class pattern can occur, and averaging bounds the
//!   cost by `((s - r + 1) / s) * m * n`.
//! * [`min_edit_distance`] is exact: iterative deepening on the cost, with
//!   branching on the cells of a surviving occurrence and a disjoint-packing
//!   lower bound for pruning. When its node budget runs out it returns a
//!   bracketed, explicitly inexact verdict.
//! * [`brute_force_min_edit`] enumerates every matrix over the alphabet and
//!   is the independent oracle for the other two.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::containment::{contains_any, for_each_occurrence, Mode};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::{Symbol, SymbolMatrix};
use crate::pattern::Pattern;

/// One cell rewrite, 0-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edit {
    pub row: usize,
    pub col: usize,
    pub new: Symbol,
}

/// A set of rewrites on distinct cells together with the matrix they produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditPlan {
    pub edits: Vec<Edit>,
    pub result: SymbolMatrix,
}

impl EditPlan {
    /// Applies `edits` to `matrix`. Rewrites that keep a cell's symbol are
    /// dropped; two rewrites of the same cell are an error.
    pub fn apply(matrix: &SymbolMatrix, edits: impl IntoIterator<Item = Edit>) -> Result<Self> {
        let mut result = matrix.clone();
        let mut touched = BTreeSet::new();
        let mut kept = Vec::new();
        for e in edits {
            if e.row >= matrix.rows() || e.col >= matrix.cols() {
                return Err(Error::InvalidArgument(format!(
                    "edit at ({}, {}) outside a {}x{} matrix",
                    e.row + 1,
                    e.col + 1,
                    matrix.rows(),
                    matrix.cols()
                )));
            }
            if e.new == 0 || e.new as usize > matrix.max_symbols() {
                return Err(Error::InvalidArgument(format!(
                    "symbol {} outside the alphabet 1..={}",
                    e.new,
                    matrix.max_symbols()
                )));
            }
            if !touched.insert((e.row, e.col)) {
                return Err(Error::InvalidArgument(format!(
                    "cell ({}, {}) edited twice",
                    e.row + 1,
                    e.col + 1
                )));
            }
            if matrix.get(e.row, e.col) != e.new {
                result.set(e.row, e.col, e.new);
                kept.push(e);
            }
        }
        kept.sort();
        Ok(Self {
            edits: kept,
            result,
        })
    }

    pub fn cost(&self) -> usize {
        self.edits.len()
    }
}

/// Outcome of the exact solver. When `exact` is false the true distance lies
/// in `[lower_bound, upper_bound]` and `plan` realizes the upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditOutcome {
    pub plan: EditPlan,
    pub exact: bool,
    pub lower_bound: usize,
    pub upper_bound: usize,
    /// Search nodes expanded.
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditRecord {
    pub cost: usize,
    pub edits: Vec<EditEntry>,
    pub exact: bool,
    pub lower_bound: usize,
    pub upper_bound: usize,
}

/// 1-indexed rewrite in serialized form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditEntry {
    pub row: usize,
    pub col: usize,
    pub new: Symbol,
}

impl EditOutcome {
    pub fn cost(&self) -> usize {
        self.plan.cost()
    }

    pub fn record(&self) -> EditRecord {
        EditRecord {
            cost: self.plan.cost(),
            edits: self
                .plan
                .edits
                .iter()
                .map(|e| EditEntry {
                    row: e.row + 1,
                    col: e.col + 1,
                    new: e.new,
                })
                .collect(),
            exact: self.exact,
            lower_bound: self.lower_bound,
            upper_bound: self.upper_bound,
        }
    }
}

/// Recolors the `s - r + 1` smallest symbol classes into the largest one.
///
/// Class sizes range over the whole alphabet `1..=s`, so unused symbols count
/// as empty classes and are merged for free. The largest class is the one
/// with most cells, ties going to the smaller symbol; the classes to merge are
/// the others sorted by `(size, symbol)`. For `r = 1` every other class is
/// merged.
pub fn merge_smallest_classes(matrix: &SymbolMatrix, r: usize) -> Result<EditPlan> {
    let s = matrix.max_symbols();
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    if r > s {
        return Err(Error::TooManyClasses {
            classes: r,
            symbols: s,
        });
    }
    let hist = matrix.histogram();
    let largest = (1..=s)
        .max_by(|&a, &b| hist[a].cmp(&hist[b]).then(b.cmp(&a)))
        .expect("alphabet is nonempty") as Symbol;
    let mut others: Vec<Symbol> = (1..=s as Symbol).filter(|&v| v != largest).collect();
    others.sort_by_key(|&v| (hist[v as usize], v));
    let merge_count = (s - r + 1).min(others.len());
    let mut merged = vec![false; s + 1];
    for &v in &others[..merge_count] {
        merged[v as usize] = true;
    }
    let edits = (0..matrix.rows())
        .flat_map(|i| (0..matrix.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| merged[matrix.get(i, j) as usize])
        .map(|(row, col)| Edit {
            row,
            col,
            new: largest,
        });
    EditPlan::apply(matrix, edits)
}

/// `((s - r + 1) / s) * m * n`, exactly.
pub fn theoretical_bound(m: usize, n: usize, s: usize, r: usize) -> Result<Ratio<u64>> {
    if s == 0 || r == 0 {
        return Err(Error::InvalidArgument("s and r must be positive".into()));
    }
    if r > s {
        return Err(Error::TooManyClasses {
            classes: r,
            symbols: s,
        });
    }
    Ok(Ratio::new(((s - r + 1) * m * n) as u64, s as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Maximum number of search nodes expanded before giving up.
    pub budget: u64,
    pub mode: Mode,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            budget: 1_000_000,
            mode: Mode::Unordered,
        }
    }
}

impl SolverOptions {
    pub fn with_budget(budget: u64) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }
}

/// Patterns that can actually occur in an `m x n` matrix over `s` symbols.
fn relevant_targets(matrix: &SymbolMatrix, targets: &[Pattern]) -> Result<Vec<Pattern>> {
    if targets.is_empty() {
        return Err(Error::InvalidArgument("no target patterns".into()));
    }
    let mut out = Vec::new();
    for p in targets {
        if !p.is_concrete() {
            return Err(Error::WildcardPattern);
        }
        if p.is_trivial()? {
            return Err(Error::TrivialPattern);
        }
        if p.rows() <= matrix.rows()
            && p.cols() <= matrix.cols()
            && p.num_classes() <= matrix.max_symbols()
        {
            out.push(p.clone());
        }
    }
    Ok(out)
}

struct Exhausted;

enum Scan {
    Clean,
    Infeasible,
    Branch { cells: Vec<usize>, lower: usize },
}

struct Search<'a> {
    targets: &'a [Pattern],
    current: SymbolMatrix,
    /// Cells whose final value is decided (edited or declared unchanged).
    fixed: Vec<bool>,
    edits: Vec<Edit>,
    nodes: u64,
    budget: u64,
    mode: Mode,
}

impl Search<'_> {
    /// Finds the occurrence with the fewest undecided cells and a greedy
    /// packing of occurrences that are disjoint on undecided cells.
    fn scan(&self) -> Scan {
        let n = self.current.cols();
        let mut taken = vec![false; self.fixed.len()];
        let mut lower = 0;
        let mut best: Option<Vec<usize>> = None;
        let mut infeasible = false;
        let mut any = false;
        for p in self.targets {
            for_each_occurrence(p, &self.current, self.mode, |rows, cols, _| {
                any = true;
                let mut free = Vec::with_capacity(rows.len() * cols.len());
                for &r in rows {
                    for &c in cols {
                        let idx = r * n + c;
                        if !self.fixed[idx] {
                            free.push(idx);
                        }
                    }
                }
                if free.is_empty() {
                    infeasible = true;
                    return ControlFlow::Break(());
                }
                if free.iter().all(|&i| !taken[i]) {
                    for &i in &free {
                        taken[i] = true;
                    }
                    lower += 1;
                }
                if best.as_ref().is_none_or(|b| free.len() < b.len()) {
                    best = Some(free);
                }
                ControlFlow::Continue(())
            });
            if infeasible {
                return Scan::Infeasible;
            }
        }
        match best {
            None if !any => Scan::Clean,
            None => Scan::Infeasible,
            Some(cells) => Scan::Branch { cells, lower },
        }
    }

    /// Looks for a completion using at most `remaining` more edits.
    fn dfs(&mut self, remaining: usize) -> std::result::Result<bool, Exhausted> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Exhausted);
        }
        let (cells, lower) = match self.scan() {
            Scan::Clean => return Ok(true),
            Scan::Infeasible => return Ok(false),
            Scan::Branch { cells, lower } => (cells, lower),
        };
        if lower > remaining {
            return Ok(false);
        }
        let n = self.current.cols();
        let s = self.current.max_symbols() as Symbol;
        // Branch i: cells[..i] keep their symbol and cells[i] changes. On
        // success or exhaustion the state is left as is for the caller.
        for (i, &idx) in cells.iter().enumerate() {
            let (row, col) = (idx / n, idx % n);
            let old = self.current.get(row, col);
            self.fixed[idx] = true;
            for new in (1..=s).filter(|&v| v != old) {
                self.current.set(row, col, new);
                self.edits.push(Edit { row, col, new });
                if self.dfs(remaining - 1)? {
                    return Ok(true);
                }
                self.edits.pop();
                self.current.set(row, col, old);
            }
            if i + 1 == cells.len() {
                for &j in &cells {
                    self.fixed[j] = false;
                }
            }
        }
        Ok(false)
    }
}

/// Minimum number of cell rewrites after which no pattern of `targets`
/// occurs (a wildcard pattern is passed as its expansion).
///
/// Rewrites may use any symbol of `1..=s`, including symbols absent from the
/// input. Trivial patterns are rejected because their forbidden class can be
/// empty. If the node budget runs out the result is a bracket: the lower end
/// is the first cost level not yet refuted, the upper end comes from
/// [`merge_smallest_classes`].
pub fn min_edit_distance(
    matrix: &SymbolMatrix,
    targets: &[Pattern],
    opts: SolverOptions,
) -> Result<EditOutcome> {
    let targets = relevant_targets(matrix, targets)?;
    if targets.is_empty() {
        return Ok(EditOutcome {
            plan: EditPlan::apply(matrix, [])?,
            exact: true,
            lower_bound: 0,
            upper_bound: 0,
            nodes: 0,
        });
    }
    let r_min = targets.iter().map(Pattern::num_classes).min().unwrap();
    let heuristic = merge_smallest_classes(matrix, r_min)?;
    debug_assert!(!contains_any(&targets, &heuristic.result, opts.mode)?);
    let upper = heuristic.cost();

    let mut search = Search {
        targets: &targets,
        current: matrix.clone(),
        fixed: vec![false; matrix.rows() * matrix.cols()],
        edits: Vec::new(),
        nodes: 0,
        budget: opts.budget,
        mode: opts.mode,
    };
    let root_lower = match search.scan() {
        Scan::Clean => 0,
        Scan::Infeasible => unreachable!("no cell is fixed at the root"),
        Scan::Branch { lower, .. } => lower,
    };
    for depth in root_lower..upper {
        match search.dfs(depth) {
            Ok(true) => {
                let plan = EditPlan::apply(matrix, search.edits.iter().copied())?;
                assert_eq!(plan.cost(), depth);
                return Ok(EditOutcome {
                    lower_bound: plan.cost(),
                    upper_bound: plan.cost(),
                    plan,
                    exact: true,
                    nodes: search.nodes,
                });
            }
            Ok(false) => {}
            Err(Exhausted) => {
                return Ok(EditOutcome {
                    plan: heuristic,
                    exact: false,
                    lower_bound: depth,
                    upper_bound: upper,
                    nodes: search.nodes,
                });
            }
        }
    }
    Ok(EditOutcome {
        plan: heuristic,
        exact: true,
        lower_bound: upper,
        upper_bound: upper,
        nodes: search.nodes,
    })
}

/// Edit distance by enumerating all `s^(mn)` matrices over `1..=s` and
/// keeping the nearest one free of every target.
pub fn brute_force_min_edit(
    matrix: &SymbolMatrix,
    targets: &[Pattern],
    limits: &Limits,
) -> Result<usize> {
    let cells = matrix.rows() * matrix.cols();
    let s = matrix.max_symbols();
    if cells > limits.brute_force_cells {
        return Err(Error::CapExceeded {
            what: format!("matrix with {cells} cells"),
            limit: limits.brute_force_cells as u64,
        });
    }
    if s > limits.brute_force_symbols {
        return Err(Error::CapExceeded {
            what: format!("alphabet of {s} symbols"),
            limit: limits.brute_force_symbols as u64,
        });
    }
    let targets = relevant_targets(matrix, targets)?;
    let mut candidate = vec![1 as Symbol; cells];
    let mut best = usize::MAX;
    loop {
        let d = candidate
            .iter()
            .zip(matrix.entries())
            .filter(|(a, b)| a != b)
            .count();
        if d < best {
            let m = SymbolMatrix::new(matrix.rows(), matrix.cols(), candidate.clone(), s)?;
            if !contains_any(&targets, &m, Mode::Unordered)? {
                best = d;
            }
        }
        // Odometer over {1..s}^cells.
        let mut i = 0;
        while i < cells && candidate[i] as usize == s {
            candidate[i] = 1;
            i += 1;
        }
        if i == cells {
            break;
        }
        candidate[i] += 1;
    }
    Ok(best)
}

/// The extremal value `f(m, n; s, A)` computed exhaustively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalReport {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    pub pattern: Pattern,
    pub f_value: usize,
    pub witness_matrix: SymbolMatrix,
    pub upper_bound: Ratio<u64>,
    /// Matrices examined after symmetry reduction.
    pub representatives: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    pub r: usize,
    pub f_value: usize,
    pub upper_bound: String,
    pub representatives: usize,
    pub witness: Vec<Vec<Symbol>>,
}

impl ExtremalReport {
    pub fn record(&self) -> ExtremalRecord {
        ExtremalRecord {
            m: self.m,
            n: self.n,
            s: self.s,
            r: self.pattern.num_classes(),
            f_value: self.f_value,
            upper_bound: self.upper_bound.to_string(),
            representatives: self.representatives,
            witness: (0..self.m)
                .map(|i| self.witness_matrix.row(i).to_vec())
                .collect(),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k)).unwrap_or(u64::MAX)
}

/// Smallest first-occurrence-relabeled entry vector over all row and column
/// permutations: one representative per orbit of row x column x symbol
/// symmetries.
fn orbit_representative(
    entries: &[Symbol],
    m: usize,
    n: usize,
    s: usize,
    row_perms: &[Vec<usize>],
    col_perms: &[Vec<usize>],
) -> Vec<Symbol> {
    let mut best: Option<Vec<Symbol>> = None;
    let mut buf = vec![0 as Symbol; m * n];
    let mut relabel = vec![0 as Symbol; s + 1];
    for rp in row_perms {
        for cp in col_perms {
            relabel.iter_mut().for_each(|x| *x = 0);
            let mut next = 0;
            for (i, &r) in rp.iter().enumerate() {
                for (j, &c) in cp.iter().enumerate() {
                    let v = entries[r * n + c] as usize;
                    if relabel[v] == 0 {
                        next += 1;
                        relabel[v] = next;
                    }
                    buf[i * n + j] = relabel[v];
                }
            }
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
    }
    best.expect("at least one permutation")
}

/// Maximizes the edit distance over all `m x n` matrices with at most `s`
/// distinct entries, one representative per symmetry orbit. Distances come
/// from [`brute_force_min_edit`]; the witness is re-certified by
/// [`min_edit_distance`].
pub fn extremal_f(
    m: usize,
    n: usize,
    s: usize,
    pattern: &Pattern,
    limits: &Limits,
) -> Result<ExtremalReport> {
    if m == 0 || n == 0 || s == 0 {
        return Err(Error::InvalidArgument("m, n and s must be positive".into()));
    }
    if !pattern.is_concrete() {
        return Err(Error::WildcardPattern);
    }
    if pattern.is_trivial()? {
        return Err(Error::TrivialPattern);
    }
    let raw = (s as u64).checked_pow((m * n) as u32).unwrap_or(u64::MAX);
    if raw > limits.extremal_matrices {
        return Err(Error::CapExceeded {
            what: format!("{raw} matrices (use the Monte Carlo estimate instead)"),
            limit: limits.extremal_matrices,
        });
    }
    let perms = factorial(m).saturating_mul(factorial(n));
    if perms > limits.extremal_permutations {
        return Err(Error::CapExceeded {
            what: format!("{perms} row x column permutations"),
            limit: limits.extremal_permutations,
        });
    }
    let upper_bound = if pattern.num_classes() <= s {
        theoretical_bound(m, n, s, pattern.num_classes())?
    } else {
        Ratio::from_integer((m * n) as u64)
    };
    let row_perms = permutations(m);
    let col_perms = permutations(n);
    let cells = m * n;
    let mut reps = BTreeSet::new();
    let mut entries = vec![1 as Symbol; cells];
    loop {
        reps.insert(orbit_representative(&entries, m, n, s, &row_perms, &col_perms));
        let mut i = 0;
        while i < cells && entries[i] as usize == s {
            entries[i] = 1;
            i += 1;
        }
        if i == cells {
            break;
        }
        entries[i] += 1;
    }
    let targets = std::slice::from_ref(pattern);
    let mut best: Option<(usize, SymbolMatrix)> = None;
    for rep in &reps {
        let matrix = SymbolMatrix::new(m, n, rep.clone(), s)?;
        let d = brute_force_min_edit(&matrix, targets, limits)?;
        if best.as_ref().is_none_or(|(b, _)| d > *b) {
            best = Some((d, matrix));
        }
    }
    let (f_value, witness_matrix) = best.expect("at least one matrix");
    let certified = min_edit_distance(&witness_matrix, targets, SolverOptions::default())?;
    assert!(
        certified.exact && certified.cost() == f_value,
        "exact solver disagrees with enumeration on the extremal witness"
    );
    Ok(ExtremalReport {
        m,
        n,
        s,
        pattern: pattern.clone(),
        f_value,
        witness_matrix,
        upper_bound,
        representatives: reps.len(),
    })
}
