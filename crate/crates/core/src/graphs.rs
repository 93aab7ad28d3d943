//! The edge-colored complete bipartite view of a symbol matrix.
//!
//! Entry `(i, j)` of an `m x n` matrix is the color of edge `{x_i, y_j}` of
//! `K_{m,n}`. Densities are exact rationals so that regularity comparisons
//! never depend on floating point rounding.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::containment::{Mode, Search};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::{Symbol, SymbolMatrix};

/// A coloring `c: X x Y -> {1..s}` of the complete bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPair {
    left_size: usize,
    right_size: usize,
    colors: Vec<Symbol>,
    num_colors: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A vertex of the pair: `index` is 0-based within its side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub fn left(index: usize) -> Self {
        Self {
            side: Side::Left,
            index,
        }
    }

    pub fn right(index: usize) -> Self {
        Self {
            side: Side::Right,
            index,
        }
    }
}

pub fn to_coloring(matrix: &SymbolMatrix) -> ColoredPair {
    ColoredPair {
        left_size: matrix.rows(),
        right_size: matrix.cols(),
        colors: matrix.entries().to_vec(),
        num_colors: matrix.max_symbols(),
    }
}

pub fn to_matrix(pair: &ColoredPair) -> SymbolMatrix {
    SymbolMatrix::new(
        pair.left_size,
        pair.right_size,
        pair.colors.clone(),
        pair.num_colors,
    )
    .expect("a colored pair is a valid matrix")
}

impl From<&SymbolMatrix> for ColoredPair {
    fn from(m: &SymbolMatrix) -> Self {
        to_coloring(m)
    }
}

impl ColoredPair {
    pub fn left_size(&self) -> usize {
        self.left_size
    }

    pub fn right_size(&self) -> usize {
        self.right_size
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn color(&self, x: usize, y: usize) -> Symbol {
        self.colors[x * self.right_size + y]
    }

    fn check_subset(subset: &[usize], size: usize) -> Result<()> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut seen = vec![false; size];
        for &v in subset {
            if v >= size || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidVertex(format!(
                    "{} (repeated or outside 1..={size})",
                    v + 1
                )));
            }
        }
        Ok(())
    }

    /// Number of edges of color `color` between `left` and `right`.
    pub fn color_count(&self, color: Symbol, left: &[usize], right: &[usize]) -> usize {
        left.iter()
            .map(|&x| right.iter().filter(|&&y| self.color(x, y) == color).count())
            .sum()
    }

    /// `d_color(X', Y') = |E_color(X', Y')| / (|X'| |Y'|)`.
    pub fn color_density(&self, color: Symbol, left: &[usize], right: &[usize]) -> Result<Ratio<u64>> {
        Self::check_subset(left, self.left_size)?;
        Self::check_subset(right, self.right_size)?;
        Ok(Ratio::new(
            self.color_count(color, left, right) as u64,
            (left.len() * right.len()) as u64,
        ))
    }

    /// Density of `color` over the whole pair.
    pub fn global_density(&self, color: Symbol) -> Ratio<u64> {
        let count = self.colors.iter().filter(|&&c| c == color).count();
        Ratio::new(count as u64, self.colors.len() as u64)
    }

    /// `N_color(v)`: vertices on the other side joined to `v` by `color`,
    /// sorted and 0-based.
    pub fn neighborhood(&self, v: Vertex, color: Symbol) -> Result<Vec<usize>> {
        match v.side {
            Side::Left if v.index < self.left_size => Ok((0..self.right_size)
                .filter(|&y| self.color(v.index, y) == color)
                .collect()),
            Side::Right if v.index < self.right_size => Ok((0..self.left_size)
                .filter(|&x| self.color(x, v.index) == color)
                .collect()),
            _ => Err(Error::InvalidVertex(format!("{:?} {}", v.side, v.index + 1))),
        }
    }
}

/// Exact occurrence of one coloring inside another: injections of the
/// target's sides into the host's sides under which colors agree exactly.
/// Unlike pattern containment no renaming of colors is allowed.
pub fn coloring_occurs(host: &ColoredPair, target: &ColoredPair) -> bool {
    if target.left_size > host.left_size || target.right_size > host.right_size {
        return false;
    }
    if target.colors.iter().any(|&c| c as usize > host.num_colors) {
        return false;
    }
    let host_matrix = to_matrix(host);
    let mut search = Search::identity(
        &target.colors,
        target.left_size,
        target.right_size,
        &host_matrix,
        Mode::Unordered,
    );
    search
        .run(&mut |_, _, _| ControlFlow::Break(()))
        .is_break()
}

/// The regularity tolerance, an exact rational in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Epsilon(Ratio<i64>);

impl Epsilon {
    pub fn new(value: Ratio<i64>) -> Result<Self> {
        if value <= Ratio::from_integer(0) || value >= Ratio::from_integer(1) {
            return Err(Error::InvalidEpsilon(value.to_string()));
        }
        Ok(Self(value))
    }

    pub fn from_fraction(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidEpsilon(format!("{numer}/{denom}")));
        }
        Self::new(Ratio::new(numer, denom))
    }

    pub fn value(&self) -> Ratio<i64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// `ceil(eps * size)`: the least subset size that qualifies.
    pub fn min_subset(&self, size: usize) -> usize {
        let prod = self.0 * Ratio::from_integer(size as i64);
        prod.ceil().to_integer().max(1) as usize
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    /// Accepts `p/q` or a plain decimal such as `0.25`, both read exactly.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidEpsilon(s.to_string());
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse::<i64>().map_err(|_| bad())?;
            let q = q.trim().parse::<i64>().map_err(|_| bad())?;
            return Self::from_fraction(p, q);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let digits = |t: &str| t.chars().all(|c| c.is_ascii_digit());
        if frac.len() > 15 || !digits(frac) || !digits(int) || (int.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let scale = 10i64.pow(frac.len() as u32);
        let frac_val: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        Self::new(Ratio::new(int * scale + frac_val, scale))
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegularityMethod {
    Exhaustive,
    Sampled,
}

/// How to look for an irregular subset pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Checker {
    /// Every qualifying pair; definitive.
    Exhaustive,
    /// Random qualifying pairs: the size is drawn uniformly from the
    /// qualifying range, then a uniform subset of that size.
    Sampled { samples: u64, seed: u64 },
}

/// An irregular subset pair, 0-based vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub density: Ratio<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub color: Symbol,
    pub epsilon: Epsilon,
    pub global_density: Ratio<u64>,
    pub regular: bool,
    pub witness: Option<Witness>,
    pub method: RegularityMethod,
    /// Subset pairs drawn, for the sampled method.
    pub samples: Option<u64>,
    /// Exhaustive verdicts and irregular verdicts are definitive; a sampled
    /// "regular" is not.
    pub definitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub left_subset: Vec<usize>,
    pub right_subset: Vec<usize>,
    pub density: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityRecord {
    pub color: Symbol,
    pub epsilon: f64,
    pub density: String,
    pub regular: bool,
    pub method: RegularityMethod,
    pub witness: Option<WitnessRecord>,
    pub samples: Option<u64>,
    pub definitive: bool,
}

impl RegularityVerdict {
    pub fn record(&self) -> RegularityRecord {
        RegularityRecord {
            color: self.color,
            epsilon: self.epsilon.to_f64(),
            density: self.global_density.to_string(),
            regular: self.regular,
            method: self.method,
            witness: self.witness.as_ref().map(|w| WitnessRecord {
                left_subset: w.left.iter().map(|v| v + 1).collect(),
                right_subset: w.right.iter().map(|v| v + 1).collect(),
                density: w.density.to_string(),
            }),
            samples: self.samples,
            definitive: self.definitive,
        }
    }

    /// Recomputes the witness density and checks the irregularity conditions.
    pub fn witness_holds(&self, pair: &ColoredPair) -> bool {
        let Some(w) = &self.witness else {
            return false;
        };
        let Ok(d) = pair.color_density(self.color, &w.left, &w.right) else {
            return false;
        };
        d == w.density
            && w.left.len() >= self.epsilon.min_subset(pair.left_size)
            && w.right.len() >= self.epsilon.min_subset(pair.right_size)
            && deviates(self.global_density, d, self.epsilon)
    }
}

/// `|a - b| >= eps`, exactly.
fn deviates(a: Ratio<u64>, b: Ratio<u64>, eps: Epsilon) -> bool {
    let to_i = |r: Ratio<u64>| Ratio::new(*r.numer() as i128, *r.denom() as i128);
    let e = eps.value();
    let e = Ratio::new(*e.numer() as i128, *e.denom() as i128);
    let diff = to_i(a) - to_i(b);
    let diff = if diff < Ratio::from_integer(0) { -diff } else { diff };
    diff >= e
}

fn mask_members(mask: u64, size: usize) -> Vec<usize> {
    (0..size).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Checks whether `(X, Y)` is `eps`-regular in `color`: every `X' ⊆ X`,
/// `Y' ⊆ Y` with `|X'| >= eps|X|` and `|Y'| >= eps|Y|` must satisfy
/// `|d(X, Y) - d(X', Y')| < eps`.
///
/// The exhaustive checker reports the pair of largest deviation, preferring
/// larger subsets on ties and then the first in increasing bitmask order.
pub fn is_epsilon_regular(
    pair: &ColoredPair,
    color: Symbol,
    eps: Epsilon,
    checker: Checker,
    limits: &Limits,
) -> Result<RegularityVerdict> {
    let global = pair.global_density(color);
    let min_left = eps.min_subset(pair.left_size);
    let min_right = eps.min_subset(pair.right_size);
    let mut verdict = RegularityVerdict {
        color,
        epsilon: eps,
        global_density: global,
        regular: true,
        witness: None,
        method: RegularityMethod::Exhaustive,
        samples: None,
        definitive: true,
    };
    match checker {
        Checker::Exhaustive => {
            let vertices = pair.left_size + pair.right_size;
            if vertices > limits.exhaustive_regularity_vertices || pair.left_size >= 64 || pair.right_size >= 64 {
                return Err(Error::CapExceeded {
                    what: format!("exhaustive regularity check on {vertices} vertices"),
                    limit: limits.exhaustive_regularity_vertices as u64,
                });
            }
            // Right-side neighborhoods of each left vertex in `color`, as bitmasks.
            let nbr: Vec<u64> = (0..pair.left_size)
                .map(|x| {
                    (0..pair.right_size)
                        .filter(|&y| pair.color(x, y) == color)
                        .fold(0u64, |m, y| m | 1 << y)
                })
                .collect();
            let right_masks: Vec<u64> = (1u64..1 << pair.right_size)
                .filter(|m| m.count_ones() as usize >= min_right)
                .collect();
            let mut best: Option<(Ratio<u64>, usize, u64, u64, Ratio<u64>)> = None;
            for lm in (1u64..1 << pair.left_size).filter(|m| m.count_ones() as usize >= min_left) {
                let members = mask_members(lm, pair.left_size);
                for &rm in &right_masks {
                    let count: u32 = members.iter().map(|&x| (nbr[x] & rm).count_ones()).sum();
                    let d = Ratio::new(
                        count as u64,
                        (lm.count_ones() * rm.count_ones()) as u64,
                    );
                    if !deviates(global, d, eps) {
                        continue;
                    }
                    let dev = if d > global { d - global } else { global - d };
                    let size = (lm.count_ones() + rm.count_ones()) as usize;
                    let better = best
                        .as_ref()
                        .is_none_or(|(bd, bs, ..)| dev > *bd || (dev == *bd && size > *bs));
                    if better {
                        best = Some((dev, size, lm, rm, d));
                    }
                }
            }
            if let Some((_, _, lm, rm, d)) = best {
                verdict.regular = false;
                verdict.witness = Some(Witness {
                    left: mask_members(lm, pair.left_size),
                    right: mask_members(rm, pair.right_size),
                    density: d,
                });
            }
        }
        Checker::Sampled { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidArgument("sample budget must be at least 1".into()));
            }
            verdict.method = RegularityMethod::Sampled;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut drawn = 0;
            while drawn < samples {
                drawn += 1;
                let lsize = rng.gen_range(min_left..=pair.left_size);
                let rsize = rng.gen_range(min_right..=pair.right_size);
                let mut left = sample(&mut rng, pair.left_size, lsize).into_vec();
                let mut right = sample(&mut rng, pair.right_size, rsize).into_vec();
                left.sort_unstable();
                right.sort_unstable();
                let d = Ratio::new(
                    pair.color_count(color, &left, &right) as u64,
                    (lsize * rsize) as u64,
                );
                if deviates(global, d, eps) {
                    verdict.regular = false;
                    verdict.witness = Some(Witness {
                        left,
                        right,
                        density: d,
                    });
                    break;
                }
            }
            verdict.samples = Some(drawn);
            verdict.definitive = !verdict.regular;
        }
    }
    Ok(verdict)
}
