//! Test-only oracles, written against the definitions and independent of the
//! search code they check.

#![allow(dead_code)]

use pattern_edit::{Cell, Pattern, Symbol, SymbolMatrix};

/// All injective maps from `0..k` into `0..n`.
pub fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(k, n, cur, out);
                cur.pop();
            }
        }
    }
    rec(k, n, &mut cur, &mut out);
    out
}

/// Whether the submatrix picked by `rows` x `cols` has the pattern: two
/// non-wildcard cells hold equal entries iff they share a class.
pub fn has_pattern_at(p: &Pattern, m: &SymbolMatrix, rows: &[usize], cols: &[usize]) -> bool {
    let cells: Vec<(usize, usize, u16)> = (0..p.rows())
        .flat_map(|a| (0..p.cols()).map(move |b| (a, b)))
        .filter_map(|(a, b)| match p.cell(a, b) {
            Cell::Class(t) => Some((a, b, t)),
            Cell::Wildcard => None,
        })
        .collect();
    cells.iter().all(|&(a, b, t)| {
        cells.iter().all(|&(c, d, u)| {
            let equal = m.get(rows[a], cols[b]) == m.get(rows[c], cols[d]);
            equal == (t == u)
        })
    })
}

/// Every (row map, col map) placing the pattern, unordered injections.
pub fn oracle_placements(p: &Pattern, m: &SymbolMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    if p.rows() > m.rows() || p.cols() > m.cols() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rows in injections(p.rows(), m.rows()) {
        for cols in injections(p.cols(), m.cols()) {
            if has_pattern_at(p, m, &rows, &cols) {
                out.push((rows.clone(), cols.clone()));
            }
        }
    }
    out
}

pub fn oracle_contains(p: &Pattern, m: &SymbolMatrix) -> bool {
    !oracle_placements(p, m).is_empty()
}

/// Every matrix over `1..=s` of the given shape.
pub fn all_matrices(rows: usize, cols: usize, s: usize) -> Vec<SymbolMatrix> {
    let cells = rows * cols;
    let total = s.pow(cells as u32);
    (0..total)
        .map(|mut code| {
            let entries = (0..cells)
                .map(|_| {
                    let v = (code % s) as Symbol + 1;
                    code /= s;
                    v
                })
                .collect();
            SymbolMatrix::new(rows, cols, entries, s).unwrap()
        })
        .collect()
}

/// `Dist(M, Forb)` straight from the definition, using the iff oracle.
pub fn oracle_dist(m: &SymbolMatrix, targets: &[Pattern]) -> usize {
    all_matrices(m.rows(), m.cols(), m.max_symbols())
        .into_iter()
        .filter(|f| !targets.iter().any(|p| oracle_contains(p, f)))
        .map(|f| m.dist(&f).unwrap())
        .min()
        .expect("constant matrices avoid every nontrivial pattern")
}

pub fn corner() -> Pattern {
    Pattern::inline("x x / x y").unwrap()
}

pub fn diagonal() -> Pattern {
    Pattern::inline("x y / y x").unwrap()
}

pub fn mat(rows: &[&[Symbol]], s: usize) -> SymbolMatrix {
    SymbolMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), s).unwrap()
}
