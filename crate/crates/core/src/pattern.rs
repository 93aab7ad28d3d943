//! Patterns: partitions of a `k x l` index grid into nonempty classes,
//! optionally with wildcard cells that match any entry.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Identifier of a pattern class. Class ids are `1..=num_classes`.
pub type ClassId = u16;

/// One cell of a pattern grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Class(ClassId),
    Wildcard,
}

impl Cell {
    pub fn class(self) -> Option<ClassId> {
        match self {
            Cell::Class(c) => Some(c),
            Cell::Wildcard => None,
        }
    }
}

/// A partition of the cells of a `rows x cols` grid into classes, plus
/// wildcard cells.
///
/// A matrix *has* the pattern when two of its non-wildcard cells hold equal
/// entries exactly when they lie in the same class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    rows: usize,
    cols: usize,
    cells: Vec<Cell>,
    num_classes: usize,
}

impl Pattern {
    /// Builds a pattern from a row-major cell grid.
    ///
    /// The class ids used must be exactly `1..=r` for some `r`; any labeling
    /// order is accepted. A pattern made only of wildcards has `r = 0`.
    pub fn new(rows: usize, cols: usize, cells: Vec<Cell>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidPattern(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if cells.len() != rows * cols {
            return Err(Error::InvalidPattern(format!(
                "expected {} cells for a {rows}x{cols} grid, got {}",
                rows * cols,
                cells.len()
            )));
        }
        let num_classes = cells.iter().filter_map(|c| c.class()).max().unwrap_or(0) as usize;
        let mut seen = vec![false; num_classes + 1];
        for cell in &cells {
            if let Cell::Class(c) = *cell {
                if c == 0 {
                    return Err(Error::InvalidPattern("class id 0 is reserved".into()));
                }
                seen[c as usize] = true;
            }
        }
        if let Some(missing) = (1..=num_classes).find(|&c| !seen[c]) {
            return Err(Error::InvalidPattern(format!("class {missing} has no cells")));
        }
        if num_classes == 0 && !cells.contains(&Cell::Wildcard) {
            return Err(Error::InvalidPattern("pattern has no classes".into()));
        }
        Ok(Self {
            rows,
            cols,
            cells,
            num_classes,
        })
    }

    /// Builds a pattern from string labels; `*` is a wildcard and every other
    /// token is a class label, numbered by first occurrence in row-major order.
    pub fn from_labels<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::InvalidPattern(format!(
                "row {} has {} cells, expected {ncols}",
                bad + 1,
                rows[bad].len()
            )));
        }
        let mut ids: HashMap<&str, ClassId> = HashMap::new();
        let mut cells = Vec::with_capacity(nrows * ncols);
        for token in rows.iter().flatten() {
            let token = token.as_ref();
            if token == "*" {
                cells.push(Cell::Wildcard);
            } else {
                let next = ids.len() as ClassId + 1;
                cells.push(Cell::Class(*ids.entry(token).or_insert(next)));
            }
        }
        Self::new(nrows, ncols, cells)
    }

    /// Parses a compact one-line form such as `"x x / x y"` or `"1 2 / 1 *"`:
    /// rows separated by `/`, cells by whitespace.
    pub fn inline(text: &str) -> Result<Self> {
        let rows: Vec<Vec<&str>> = text
            .split('/')
            .map(|row| row.split_whitespace().collect())
            .collect();
        Self::from_labels(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of non-wildcard classes (`r`).
    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.cols + col]
    }

    pub fn num_wildcards(&self) -> usize {
        self.cells.iter().filter(|c| **c == Cell::Wildcard).count()
    }

    pub fn is_concrete(&self) -> bool {
        self.num_wildcards() == 0
    }

    /// Relabels classes by first occurrence in row-major order. Two patterns
    /// describe the same partition iff their canonical forms are equal.
    pub fn canonicalize(&self) -> Pattern {
        let mut relabel = vec![0 as ClassId; self.num_classes + 1];
        let mut next = 0;
        let cells = self
            .cells
            .iter()
            .map(|cell| match *cell {
                Cell::Wildcard => Cell::Wildcard,
                Cell::Class(c) => {
                    let slot = &mut relabel[c as usize];
                    if *slot == 0 {
                        next += 1;
                        *slot = next;
                    }
                    Cell::Class(*slot)
                }
            })
            .collect();
        Pattern {
            rows: self.rows,
            cols: self.cols,
            cells,
            num_classes: self.num_classes,
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// True for the single-class pattern. Only defined on concrete patterns.
    pub fn is_trivial(&self) -> Result<bool> {
        if !self.is_concrete() {
            return Err(Error::WildcardPattern);
        }
        Ok(self.num_classes == 1)
    }

    /// All concrete patterns obtained by sending each wildcard either to an
    /// existing class or to a fresh class, fresh classes being shared among
    /// wildcards in every possible way. Output is canonical, deduplicated and
    /// sorted.
    pub fn expand_wildcards(&self) -> Vec<Pattern> {
        let wild: Vec<usize> = (0..self.cells.len())
            .filter(|&i| self.cells[i] == Cell::Wildcard)
            .collect();
        let mut out = BTreeSet::new();
        let mut cells = self.cells.clone();
        self.expand_rec(&wild, 0, self.num_classes, &mut cells, &mut out);
        out.into_iter().collect()
    }

    fn expand_rec(
        &self,
        wild: &[usize],
        depth: usize,
        classes: usize,
        cells: &mut Vec<Cell>,
        out: &mut BTreeSet<Pattern>,
    ) {
        if depth == wild.len() {
            let concrete = Pattern {
                rows: self.rows,
                cols: self.cols,
                cells: cells.clone(),
                num_classes: classes,
            };
            out.insert(concrete.canonicalize());
            return;
        }
        // Existing classes, then one fresh class (restricted growth).
        for c in 1..=classes + 1 {
            cells[wild[depth]] = Cell::Class(c as ClassId);
            self.expand_rec(wild, depth + 1, classes.max(c), cells, out);
        }
        cells[wild[depth]] = Cell::Wildcard;
    }

    pub fn transpose(&self) -> Pattern {
        let cells = (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| (r, c)))
            .map(|(r, c)| self.cell(r, c))
            .collect();
        Pattern {
            rows: self.cols,
            cols: self.rows,
            cells,
            num_classes: self.num_classes,
        }
    }

    /// Every canonical concrete pattern of the given shape, optionally
    /// restricted to exactly `classes` classes. Enumerates restricted growth
    /// strings, so the count is a Bell (or Stirling) number.
    pub fn all_concrete(rows: usize, cols: usize, classes: Option<usize>) -> Vec<Pattern> {
        fn rec(
            len: usize,
            max_classes: usize,
            exact: Option<usize>,
            cur: &mut Vec<ClassId>,
            used: usize,
            out: &mut Vec<Vec<ClassId>>,
        ) {
            let remaining = len - cur.len();
            if let Some(k) = exact {
                if used + remaining < k {
                    return;
                }
            }
            if remaining == 0 {
                if exact.is_none_or(|k| used == k) {
                    out.push(cur.clone());
                }
                return;
            }
            for c in 1..=(used + 1).min(max_classes) {
                cur.push(c as ClassId);
                rec(len, max_classes, exact, cur, used.max(c), out);
                cur.pop();
            }
        }
        let len = rows * cols;
        if len == 0 {
            return Vec::new();
        }
        let mut strings = Vec::new();
        rec(
            len,
            classes.unwrap_or(len),
            classes,
            &mut Vec::new(),
            0,
            &mut strings,
        );
        strings
            .into_iter()
            .map(|s| {
                let num_classes = *s.iter().max().unwrap() as usize;
                Pattern {
                    rows,
                    cols,
                    cells: s.into_iter().map(Cell::Class).collect(),
                    num_classes,
                }
            })
            .collect()
    }
}

impl fmt::Display for Pattern {
    /// Writes the pattern text format: a `k l` header line followed by the grid.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| match self.cell(r, c) {
                    Cell::Class(id) => id.to_string(),
                    Cell::Wildcard => "*".to_string(),
                })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
