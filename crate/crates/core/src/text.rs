//! Plain-text file formats.
//!
//! Pattern files: a `k l` header, then `k` lines of `l` tokens. `*` is a
//! wildcard; any other token is a class label, numbered by first occurrence.
//!
//! Matrix files: an `m n` header, then `m` lines of `n` integers in `1..=s`.
//! `s` is the largest entry unless the caller supplies one.
//!
//! Blank lines and lines starting with `#` are ignored. Errors carry the
//! 1-based line number they refer to.

use crate::error::{Error, Result};
use crate::matrix::{Symbol, SymbolMatrix};
use crate::pattern::Pattern;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: usize, text: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(parse_err(line, format!("expected header `rows cols`, got `{text}`")));
    }
    let dim = |s: &str| -> Result<usize> {
        match s.parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(parse_err(line, format!("invalid dimension `{s}`"))),
        }
    };
    Ok((dim(parts[0])?, dim(parts[1])?))
}

/// Reads the header and `rows` token lines.
fn parse_grid(text: &str) -> Result<(usize, usize, Vec<Vec<(usize, String)>>)> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let (rows, cols) = parse_header(hline, header)?;
    let mut grid = Vec::with_capacity(rows);
    let mut last_line = hline;
    for (line, content) in lines {
        if grid.len() == rows {
            return Err(parse_err(line, format!("unexpected extra line, {rows} rows declared")));
        }
        let tokens: Vec<(usize, String)> = content
            .split_whitespace()
            .map(|t| (line, t.to_string()))
            .collect();
        if tokens.len() != cols {
            return Err(parse_err(
                line,
                format!("expected {cols} tokens, found {}", tokens.len()),
            ));
        }
        grid.push(tokens);
        last_line = line;
    }
    if grid.len() != rows {
        return Err(parse_err(
            last_line,
            format!("expected {rows} rows, found {}", grid.len()),
        ));
    }
    Ok((rows, cols, grid))
}

pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let (_, _, grid) = parse_grid(text)?;
    let labels: Vec<Vec<&str>> = grid
        .iter()
        .map(|row| row.iter().map(|(_, t)| t.as_str()).collect())
        .collect();
    Pattern::from_labels(&labels)
}

/// Parses a matrix; `max_symbols` overrides the inferred alphabet size.
pub fn parse_matrix(text: &str, max_symbols: Option<usize>) -> Result<SymbolMatrix> {
    let (rows, cols, grid) = parse_grid(text)?;
    let mut entries = Vec::with_capacity(rows * cols);
    for (line, token) in grid.iter().flatten() {
        match token.parse::<Symbol>() {
            Ok(v) if v >= 1 => entries.push(v),
            _ => {
                return Err(parse_err(
                    *line,
                    format!("entry `{token}` is not a symbol in 1..={}", Symbol::MAX),
                ))
            }
        }
    }
    let observed = *entries.iter().max().expect("nonempty grid") as usize;
    let s = match max_symbols {
        Some(s) if s < observed => {
            return Err(Error::InvalidMatrix(format!(
                "entry {observed} exceeds the alphabet size s = {s}"
            )))
        }
        Some(s) => s,
        None => observed,
    };
    SymbolMatrix::new(rows, cols, entries, s)
}
