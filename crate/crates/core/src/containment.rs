//! Finding occurrences of a pattern inside a symbol matrix.
//!
//! An occurrence is a row injection, a column injection and an injective
//! class -> symbol map such that every non-wildcard pattern cell lands on the
//! symbol of its class. Injectivity of the class map is what makes distinct
//! classes carry distinct symbols.
//!
//! The search assigns all pattern rows first, then pattern columns one at a
//! time. Each column assignment checks the whole column against the matrix,
//! binding classes to symbols on first touch and pruning on a mismatch or on
//! a symbol already claimed by another class. Occurrences therefore come out
//! in lexicographic order of `(row_map, col_map)`, which also fixes the class
//! map.

use std::fmt::Write as _;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::{Symbol, SymbolMatrix};
use crate::pattern::{Cell, ClassId, Pattern};

/// Row/column injection policy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Arbitrary injections: a pattern also matches any row/column
    /// reordering of itself.
    #[default]
    Unordered,
    /// Order-preserving injections (classical submatrix containment).
    Ordered,
}

/// A witness placing a pattern inside a matrix. Indices are 0-based; the
/// serialized [`OccurrenceRecord`] is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub row_map: Vec<usize>,
    pub col_map: Vec<usize>,
    /// `class_symbol[t - 1]` is the symbol of class `t`.
    pub class_symbol: Vec<Symbol>,
}

/// Machine-readable form of an [`Occurrence`], 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccurrenceRecord {
    pub row_map: Vec<usize>,
    pub col_map: Vec<usize>,
    pub class_symbol: Vec<Symbol>,
}

impl Occurrence {
    /// Re-checks every defining condition directly against the matrix.
    pub fn verify(&self, pattern: &Pattern, matrix: &SymbolMatrix) -> bool {
        fn injective_below(values: &[usize], bound: usize) -> bool {
            let mut seen = vec![false; bound];
            values
                .iter()
                .all(|&v| v < bound && !std::mem::replace(&mut seen[v], true))
        }
        if self.row_map.len() != pattern.rows()
            || self.col_map.len() != pattern.cols()
            || self.class_symbol.len() != pattern.num_classes()
        {
            return false;
        }
        if !injective_below(&self.row_map, matrix.rows())
            || !injective_below(&self.col_map, matrix.cols())
        {
            return false;
        }
        let symbols: Vec<usize> = self.class_symbol.iter().map(|&s| s as usize).collect();
        if !injective_below(&symbols, matrix.max_symbols() + 1) {
            return false;
        }
        (0..pattern.rows()).all(|a| {
            (0..pattern.cols()).all(|b| match pattern.cell(a, b) {
                Cell::Wildcard => true,
                Cell::Class(t) => {
                    matrix.get(self.row_map[a], self.col_map[b])
                        == self.class_symbol[t as usize - 1]
                }
            })
        })
    }

    /// Matrix cells covered by non-wildcard pattern cells.
    pub fn cells(&self, pattern: &Pattern) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(pattern.rows() * pattern.cols());
        for a in 0..pattern.rows() {
            for b in 0..pattern.cols() {
                if pattern.cell(a, b) != Cell::Wildcard {
                    out.push((self.row_map[a], self.col_map[b]));
                }
            }
        }
        out
    }

    pub fn record(&self) -> OccurrenceRecord {
        OccurrenceRecord {
            row_map: self.row_map.iter().map(|r| r + 1).collect(),
            col_map: self.col_map.iter().map(|c| c + 1).collect(),
            class_symbol: self.class_symbol.clone(),
        }
    }

    /// Human-readable grid: the selected submatrix with 1-based row and
    /// column labels.
    pub fn render(&self, matrix: &SymbolMatrix) -> String {
        let mut out = String::from("     ");
        for c in &self.col_map {
            let _ = write!(out, "{:>4}", format!("c{}", c + 1));
        }
        out.push('\n');
        for r in &self.row_map {
            let _ = write!(out, "{:>4} ", format!("r{}", r + 1));
            for c in &self.col_map {
                let _ = write!(out, "{:>4}", matrix.get(*r, *c));
            }
            out.push('\n');
        }
        out
    }
}

/// A containment question: does `pattern` occur in `matrix`?
#[derive(Debug, Clone, Copy)]
pub struct OccurrenceQuery<'a> {
    pub pattern: &'a Pattern,
    pub matrix: &'a SymbolMatrix,
    /// Cap on the number of enumerated occurrences.
    pub limit: Option<usize>,
    pub mode: Mode,
    pub limits: Limits,
}

impl<'a> OccurrenceQuery<'a> {
    pub fn new(pattern: &'a Pattern, matrix: &'a SymbolMatrix) -> Self {
        Self {
            pattern,
            matrix,
            limit: None,
            mode: Mode::default(),
            limits: Limits::default(),
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    fn validate(&self) -> Result<()> {
        if !self.pattern.is_concrete() {
            return Err(Error::WildcardPattern);
        }
        let l = &self.limits;
        if self.pattern.rows() > l.max_pattern_rows || self.pattern.cols() > l.max_pattern_cols {
            return Err(Error::PatternTooLarge {
                rows: self.pattern.rows(),
                cols: self.pattern.cols(),
                max_rows: l.max_pattern_rows,
                max_cols: l.max_pattern_cols,
            });
        }
        Ok(())
    }
}

/// Class grid of a concrete pattern, 0 standing for a wildcard.
pub(crate) fn class_grid(pattern: &Pattern) -> Vec<ClassId> {
    pattern
        .cells()
        .iter()
        .map(|c| c.class().unwrap_or(0))
        .collect()
}

/// Backtracking kernel shared by pattern containment and exact-coloring
/// occurrence.
pub(crate) struct Search<'a> {
    k: usize,
    l: usize,
    classes: &'a [ClassId],
    entries: &'a [Symbol],
    m: usize,
    n: usize,
    mode: Mode,
    row_map: Vec<usize>,
    col_map: Vec<usize>,
    used_rows: Vec<bool>,
    used_cols: Vec<bool>,
    class_sym: Vec<Symbol>,
    sym_class: Vec<ClassId>,
    frozen: bool,
}

impl<'a> Search<'a> {
    /// Pattern search: the class -> symbol map is found by the search.
    pub(crate) fn free(
        classes: &'a [ClassId],
        k: usize,
        l: usize,
        num_classes: usize,
        matrix: &'a SymbolMatrix,
        mode: Mode,
    ) -> Self {
        Self::build(classes, k, l, matrix, mode, vec![0; num_classes + 1], false)
    }

    /// Exact search: class `t` must land on symbol `t`.
    pub(crate) fn identity(
        classes: &'a [ClassId],
        k: usize,
        l: usize,
        matrix: &'a SymbolMatrix,
        mode: Mode,
    ) -> Self {
        let top = classes.iter().copied().max().unwrap_or(0);
        let bound = (0..=top).collect();
        Self::build(classes, k, l, matrix, mode, bound, true)
    }

    fn build(
        classes: &'a [ClassId],
        k: usize,
        l: usize,
        matrix: &'a SymbolMatrix,
        mode: Mode,
        class_sym: Vec<Symbol>,
        frozen: bool,
    ) -> Self {
        Self {
            k,
            l,
            classes,
            entries: matrix.entries(),
            m: matrix.rows(),
            n: matrix.cols(),
            mode,
            row_map: Vec::with_capacity(k),
            col_map: Vec::with_capacity(l),
            used_rows: vec![false; matrix.rows()],
            used_cols: vec![false; matrix.cols()],
            class_sym,
            sym_class: vec![0; matrix.max_symbols() + 1],
            frozen,
        }
    }

    /// Calls `visit(row_map, col_map, class_symbol)` for each occurrence in
    /// lexicographic `(row_map, col_map)` order until it breaks.
    pub(crate) fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[usize], &[Symbol]) -> ControlFlow<()>,
    {
        if self.k > self.m || self.l > self.n {
            return ControlFlow::Continue(());
        }
        self.rows(visit)
    }

    fn rows<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[usize], &[Symbol]) -> ControlFlow<()>,
    {
        if self.row_map.len() == self.k {
            return self.cols(visit);
        }
        let start = match (self.mode, self.row_map.last()) {
            (Mode::Ordered, Some(&r)) => r + 1,
            _ => 0,
        };
        // Leave room for the remaining rows when order matters.
        let end = match self.mode {
            Mode::Ordered => self.m + 1 - (self.k - self.row_map.len()),
            Mode::Unordered => self.m,
        };
        for r in start..end {
            if self.used_rows[r] {
                continue;
            }
            self.used_rows[r] = true;
            self.row_map.push(r);
            let flow = self.rows(visit);
            self.row_map.pop();
            self.used_rows[r] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn cols<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[usize], &[Symbol]) -> ControlFlow<()>,
    {
        let j = self.col_map.len();
        if j == self.l {
            return visit(&self.row_map, &self.col_map, &self.class_sym[1..]);
        }
        let start = match (self.mode, self.col_map.last()) {
            (Mode::Ordered, Some(&c)) => c + 1,
            _ => 0,
        };
        let end = match self.mode {
            Mode::Ordered => self.n + 1 - (self.l - j),
            Mode::Unordered => self.n,
        };
        let mut bound: [ClassId; 8] = [0; 8];
        for c in start..end {
            if self.used_cols[c] {
                continue;
            }
            let mut nbound = 0;
            let mut ok = true;
            for a in 0..self.k {
                let t = self.classes[a * self.l + j] as usize;
                if t == 0 {
                    continue;
                }
                let v = self.entries[self.row_map[a] * self.n + c];
                let have = self.class_sym[t];
                if have == 0 {
                    if self.frozen || self.sym_class[v as usize] != 0 {
                        ok = false;
                        break;
                    }
                    self.class_sym[t] = v;
                    self.sym_class[v as usize] = t as ClassId;
                    if nbound < bound.len() {
                        bound[nbound] = t as ClassId;
                        nbound += 1;
                    }
                } else if have != v {
                    ok = false;
                    break;
                }
            }
            let flow = if ok {
                self.used_cols[c] = true;
                self.col_map.push(c);
                let flow = self.cols(visit);
                self.col_map.pop();
                self.used_cols[c] = false;
                flow
            } else {
                ControlFlow::Continue(())
            };
            for &t in &bound[..nbound] {
                let v = std::mem::replace(&mut self.class_sym[t as usize], 0);
                self.sym_class[v as usize] = 0;
            }
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every occurrence of a concrete pattern in order. Patterns with
/// more classes than the matrix has distinct symbols are skipped outright.
pub(crate) fn for_each_occurrence<F>(
    pattern: &Pattern,
    matrix: &SymbolMatrix,
    mode: Mode,
    mut visit: F,
) where
    F: FnMut(&[usize], &[usize], &[Symbol]) -> ControlFlow<()>,
{
    debug_assert!(pattern.is_concrete());
    // A column binds at most `rows` classes; the kernel tracks up to 8.
    assert!(pattern.rows() <= 8, "pattern taller than the search kernel supports");
    if pattern.num_classes() > matrix.distinct_symbols() {
        return;
    }
    let classes = class_grid(pattern);
    let mut search = Search::free(
        &classes,
        pattern.rows(),
        pattern.cols(),
        pattern.num_classes(),
        matrix,
        mode,
    );
    let _ = search.run(&mut visit);
}

fn to_occurrence(rows: &[usize], cols: &[usize], syms: &[Symbol]) -> Occurrence {
    Occurrence {
        row_map: rows.to_vec(),
        col_map: cols.to_vec(),
        class_symbol: syms.to_vec(),
    }
}

/// The first occurrence in lexicographic order, if any.
pub fn find_occurrence(q: &OccurrenceQuery<'_>) -> Result<Option<Occurrence>> {
    q.validate()?;
    let mut found = None;
    for_each_occurrence(q.pattern, q.matrix, q.mode, |r, c, s| {
        found = Some(to_occurrence(r, c, s));
        ControlFlow::Break(())
    });
    if let Some(occ) = &found {
        assert!(occ.verify(q.pattern, q.matrix), "search returned an invalid occurrence");
    }
    Ok(found)
}

pub fn contains(q: &OccurrenceQuery<'_>) -> Result<bool> {
    Ok(find_occurrence(q)?.is_some())
}

/// Whether any pattern of a set occurs in the matrix.
pub fn contains_any(patterns: &[Pattern], matrix: &SymbolMatrix, mode: Mode) -> Result<bool> {
    for p in patterns {
        if contains(&OccurrenceQuery::new(p, matrix).with_mode(mode))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All occurrences, up to `q.limit`, in lexicographic order of
/// `(row_map, col_map, class_symbol)`.
pub fn enumerate_occurrences(q: &OccurrenceQuery<'_>) -> Result<Vec<Occurrence>> {
    q.validate()?;
    let limit = q.limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    for_each_occurrence(q.pattern, q.matrix, q.mode, |r, c, s| {
        out.push(to_occurrence(r, c, s));
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    debug_assert!(out.iter().all(|o| o.verify(q.pattern, q.matrix)));
    Ok(out)
}

/// Greedy first-fit packing of pairwise cell-disjoint occurrences over the
/// enumeration order. Each packed occurrence needs its own edit, so the
/// packing size is a lower bound on the edit distance to pattern-freeness.
pub fn pack_disjoint(q: &OccurrenceQuery<'_>) -> Result<Vec<Occurrence>> {
    q.validate()?;
    let limit = q.limit.unwrap_or(usize::MAX);
    let mut taken = vec![false; q.matrix.rows() * q.matrix.cols()];
    let mut packed = Vec::new();
    let mut seen = 0usize;
    let n = q.matrix.cols();
    let cells: Vec<(usize, usize)> = (0..q.pattern.rows())
        .flat_map(|a| (0..q.pattern.cols()).map(move |b| (a, b)))
        .collect();
    for_each_occurrence(q.pattern, q.matrix, q.mode, |r, c, s| {
        seen += 1;
        if cells.iter().all(|&(a, b)| !taken[r[a] * n + c[b]]) {
            for &(a, b) in &cells {
                taken[r[a] * n + c[b]] = true;
            }
            packed.push(to_occurrence(r, c, s));
        }
        if seen >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(packed)
}
