//! Symbol matrices over the canonical alphabet `{1, ..., s}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::pattern::{Cell, ClassId, Pattern};

/// A matrix entry. Valid symbols are `1..=s`.
pub type Symbol = u16;

/// An `m x n` matrix with entries in `{1, ..., s}`. Equivalently an
/// `s`-edge-coloring of `K_{m,n}` (see [`crate::graphs::ColoredPair`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Symbol>,
    max_symbols: usize,
}

impl SymbolMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Symbol>, max_symbols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if max_symbols == 0 || max_symbols > Symbol::MAX as usize {
            return Err(Error::InvalidMatrix(format!(
                "alphabet size must lie in 1..={}, got {max_symbols}",
                Symbol::MAX
            )));
        }
        if let Some(bad) = entries
            .iter()
            .find(|&&e| e == 0 || e as usize > max_symbols)
        {
            return Err(Error::InvalidMatrix(format!(
                "entry {bad} outside the alphabet 1..={max_symbols}"
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
            max_symbols,
        })
    }

    /// Builds a matrix from rows; the alphabet size is `s`.
    pub fn from_rows(rows: &[Vec<Symbol>], max_symbols: usize) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        Self::new(rows.len(), ncols, rows.concat(), max_symbols)
    }

    /// Maps arbitrary integer tokens onto `1..` by first occurrence in
    /// row-major order; `s` is the number of distinct tokens.
    pub fn from_tokens(rows: &[Vec<i64>]) -> Result<Self> {
        let mut ids: HashMap<i64, Symbol> = HashMap::new();
        let mapped: Vec<Vec<Symbol>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| {
                        let next = ids.len() as Symbol + 1;
                        *ids.entry(*t).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(&mapped, ids.len().max(1))
    }

    /// The all-`symbol` matrix.
    pub fn constant(rows: usize, cols: usize, symbol: Symbol, max_symbols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![symbol; rows * cols], max_symbols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn max_symbols(&self) -> usize {
        self.max_symbols
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Symbol {
        self.entries[row * self.cols + col]
    }

    /// Overwrites one entry. Panics if `symbol` is outside the alphabet.
    pub fn set(&mut self, row: usize, col: usize, symbol: Symbol) {
        assert!(symbol >= 1 && symbol as usize <= self.max_symbols);
        self.entries[row * self.cols + col] = symbol;
    }

    pub fn row(&self, row: usize) -> &[Symbol] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// Same entries, different alphabet size.
    pub fn with_max_symbols(&self, max_symbols: usize) -> Result<Self> {
        Self::new(self.rows, self.cols, self.entries.clone(), max_symbols)
    }

    /// Cell counts per symbol, indexed by symbol (index 0 unused).
    pub fn histogram(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_symbols + 1];
        for &e in &self.entries {
            counts[e as usize] += 1;
        }
        counts
    }

    pub fn distinct_symbols(&self) -> usize {
        self.histogram().iter().skip(1).filter(|&&c| c > 0).count()
    }

    /// Hamming distance. Errors if the shapes differ.
    pub fn dist(&self, other: &SymbolMatrix) -> Result<usize> {
        self.check_same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .filter(|(a, b)| a != b)
            .count())
    }

    pub(crate) fn check_same_shape(&self, other: &SymbolMatrix) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    /// The partition of the cells by entry equality, labeled by first
    /// occurrence.
    pub fn pattern_of(&self) -> Pattern {
        let mut relabel = vec![0 as ClassId; self.max_symbols + 1];
        let mut next = 0;
        let cells = self
            .entries
            .iter()
            .map(|&e| {
                let slot = &mut relabel[e as usize];
                if *slot == 0 {
                    next += 1;
                    *slot = next;
                }
                Cell::Class(*slot)
            })
            .collect();
        Pattern::new(self.rows, self.cols, cells).expect("entry partition is a valid pattern")
    }

    pub fn transpose(&self) -> SymbolMatrix {
        let entries = (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        SymbolMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            max_symbols: self.max_symbols,
        }
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> SymbolMatrix {
        assert_eq!(perm.len(), self.rows);
        let entries = perm.iter().flat_map(|&r| self.row(r).iter().copied()).collect();
        SymbolMatrix {
            entries,
            ..self.clone()
        }
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> SymbolMatrix {
        assert_eq!(perm.len(), self.cols);
        let entries = (0..self.rows)
            .flat_map(|r| perm.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        SymbolMatrix {
            entries,
            ..self.clone()
        }
    }

    /// Applies a symbol map (`map[old] = new`, index 0 unused) into an
    /// alphabet of size `max_symbols`.
    pub fn relabel(&self, map: &[Symbol], max_symbols: usize) -> Result<SymbolMatrix> {
        let entries = self.entries.iter().map(|&e| map[e as usize]).collect();
        SymbolMatrix::new(self.rows, self.cols, entries, max_symbols)
    }
}

/// Whether `a` and `b` have the same pattern, i.e. one is a symbol-bijective
/// image of the other.
pub fn same_pattern(a: &SymbolMatrix, b: &SymbolMatrix) -> Result<bool> {
    a.check_same_shape(b)?;
    Ok(a.pattern_of() == b.pattern_of())
}

/// The bijection `g` with `b(i,j) = g(a(i,j))` between the symbols used by
/// `a` and those used by `b`, if one exists.
pub fn pattern_bijection(
    a: &SymbolMatrix,
    b: &SymbolMatrix,
) -> Result<Option<BTreeMap<Symbol, Symbol>>> {
    if !same_pattern(a, b)? {
        return Ok(None);
    }
    Ok(Some(
        a.entries().iter().copied().zip(b.entries().iter().copied()).collect(),
    ))
}

impl fmt::Display for SymbolMatrix {
    /// Writes the matrix text format: an `m n` header followed by the rows.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
