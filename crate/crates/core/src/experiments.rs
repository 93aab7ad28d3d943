//! Seeded random colorings and the desk-scale experiments built on them.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`), seeded with
//! `seed_from_u64(seed)`. Trial `t` of size index `i` uses the same key on
//! stream `(i << 32) | t`, so trials are independent of scheduling and a run
//! is reproducible from its seed alone. Cells are filled row-major with
//! `gen_range(1..=s)`.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::containment::{pack_disjoint, OccurrenceQuery};
use crate::editing::{merge_smallest_classes, min_edit_distance, SolverOptions};
use crate::error::{Error, Result};
use crate::graphs::{coloring_occurs, to_coloring, ColoredPair};
use crate::limits::Limits;
use crate::matrix::{Symbol, SymbolMatrix};
use crate::pattern::Pattern;

fn fill(m: usize, n: usize, s: usize, rng: &mut ChaCha8Rng) -> Result<SymbolMatrix> {
    if s == 0 || s > Symbol::MAX as usize {
        return Err(Error::InvalidArgument(format!("alphabet size {s} out of range")));
    }
    let entries = (0..m * n).map(|_| rng.gen_range(1..=s as Symbol)).collect();
    SymbolMatrix::new(m, n, entries, s)
}

/// Uniform random `m x n` matrix over `1..=s`, determined by `seed`.
pub fn random_coloring(m: usize, n: usize, s: usize, seed: u64) -> Result<SymbolMatrix> {
    fill(m, n, s, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn trial_rng(seed: u64, size_index: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((size_index as u64) << 32) | trial as u64);
    rng
}

/// Whether every color's full-pair density lies strictly inside
/// `(1/s - eps, 1/s + eps)`.
pub fn density_window(pair: &ColoredPair, eps: Ratio<u64>) -> bool {
    let s = pair.num_colors() as u64;
    let center = Ratio::new(1, s);
    (1..=pair.num_colors() as Symbol).all(|c| {
        let d = pair.global_density(c);
        d + eps > center && d < center + eps
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    /// Instance shapes `(m, n)` in sweep order.
    pub sizes: Vec<(usize, usize)>,
    pub s: usize,
    /// Target pattern; wildcards are expanded into a pattern set.
    pub pattern: Pattern,
    pub trials: usize,
    pub seed: u64,
    /// Node budget for the exact solver per trial; 0 skips it.
    pub solver_budget: u64,
}

/// Edit-distance bracket for one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bracket {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendRow {
    pub m: usize,
    pub n: usize,
    pub trials: usize,
    pub sum_lower: usize,
    pub sum_upper: usize,
    pub mean_lower: f64,
    pub mean_upper: f64,
    pub exact_count: usize,
    pub ratio_lower: f64,
    pub ratio_upper: f64,
    /// `(s - r + 1) / s` as `p/q`.
    pub bound: String,
    pub brackets: Vec<Bracket>,
}

impl TrendRow {
    /// `mean_upper / (mn) <= (s - r + 1) / s`, compared exactly.
    pub fn upper_within(&self, bound: Ratio<u64>) -> bool {
        let cells = (self.m * self.n * self.trials) as u64;
        Ratio::new(self.sum_upper as u64, cells) <= bound
    }

    pub fn lower_ratio(&self) -> Ratio<u64> {
        Ratio::new(self.sum_lower as u64, (self.m * self.n * self.trials) as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    pub s: usize,
    pub r: usize,
    pub seed: u64,
    pub rows: Vec<TrendRow>,
}

impl TrendReport {
    pub fn bound(&self) -> Ratio<u64> {
        Ratio::new((self.s - self.r + 1) as u64, self.s as u64)
    }

    /// Every row's mean upper ratio is within the bound, exactly.
    pub fn upper_within_bound(&self) -> bool {
        let b = self.bound();
        self.rows.iter().all(|row| row.upper_within(b))
    }

    /// Mean lower ratios never decrease along the sweep, exactly.
    pub fn lower_ratios_nondecreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[0].lower_ratio() <= w[1].lower_ratio())
    }

    /// Plain-text table.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:>4} {:>4} {:>6} {:>10} {:>10} {:>6} {:>8} {:>8} {:>6}\n",
            "m", "n", "trials", "mean_lo", "mean_hi", "exact", "ratio_lo", "ratio_hi", "bound"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:>4} {:>4} {:>6} {:>10.3} {:>10.3} {:>6} {:>8.4} {:>8.4} {:>6}\n",
                r.m, r.n, r.trials, r.mean_lower, r.mean_upper, r.exact_count, r.ratio_lower,
                r.ratio_upper, r.bound
            ));
        }
        out
    }
}

fn bracket_for(matrix: &SymbolMatrix, targets: &[Pattern], budget: u64, r: usize) -> Result<Bracket> {
    if budget > 0 {
        let out = min_edit_distance(matrix, targets, SolverOptions::with_budget(budget))?;
        return Ok(Bracket {
            lower: out.lower_bound,
            upper: out.upper_bound,
            exact: out.exact,
        });
    }
    let upper = merge_smallest_classes(matrix, r)?.cost();
    let lower = targets
        .iter()
        .map(|p| pack_disjoint(&OccurrenceQuery::new(p, matrix)).map(|v| v.len()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    Ok(Bracket {
        lower,
        upper,
        exact: lower == upper,
    })
}

/// For each size, draws `trials` random matrices and brackets their edit
/// distance: exactly when the solver finishes within budget, otherwise
/// between the best proven lower bound and the class-merging upper bound.
pub fn estimate_f_monte_carlo(cfg: &ExperimentConfig) -> Result<TrendReport> {
    if cfg.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let targets = cfg.pattern.expand_wildcards();
    let r = targets.iter().map(Pattern::num_classes).min().unwrap_or(0);
    if r < 2 {
        return Err(Error::TrivialPattern);
    }
    if r > cfg.s {
        return Err(Error::TooManyClasses {
            classes: r,
            symbols: cfg.s,
        });
    }
    let bound = Ratio::new((cfg.s - r + 1) as u64, cfg.s as u64);
    let mut rows = Vec::with_capacity(cfg.sizes.len());
    for (i, &(m, n)) in cfg.sizes.iter().enumerate() {
        let brackets = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let matrix = fill(m, n, cfg.s, &mut trial_rng(cfg.seed, i, t))?;
                bracket_for(&matrix, &targets, cfg.solver_budget, r)
            })
            .collect::<Result<Vec<_>>>()?;
        let sum_lower: usize = brackets.iter().map(|b| b.lower).sum();
        let sum_upper: usize = brackets.iter().map(|b| b.upper).sum();
        let mean_lower = sum_lower as f64 / cfg.trials as f64;
        let mean_upper = sum_upper as f64 / cfg.trials as f64;
        rows.push(TrendRow {
            m,
            n,
            trials: cfg.trials,
            sum_lower,
            sum_upper,
            mean_lower,
            mean_upper,
            exact_count: brackets.iter().filter(|b| b.exact).count(),
            ratio_lower: mean_lower / (m * n) as f64,
            ratio_upper: mean_upper / (m * n) as f64,
            bound: bound.to_string(),
            brackets,
        });
    }
    Ok(TrendReport {
        s: cfg.s,
        r,
        seed: cfg.seed,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedOccurrences {
    pub seed: u64,
    pub targets: usize,
    pub missing_count: usize,
    /// Missing target colorings, row-major.
    pub missing: Vec<Vec<Symbol>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccurrenceSweep {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    pub side: usize,
    pub seeds: Vec<SeedOccurrences>,
}

impl OccurrenceSweep {
    pub fn total_missing(&self) -> usize {
        self.seeds.iter().map(|s| s.missing_count).sum()
    }
}

/// Every coloring of `K_{side,side}` with colors `1..=s`, row-major.
pub fn all_colorings(side: usize, s: usize) -> Vec<SymbolMatrix> {
    let cells = side * side;
    let mut out = Vec::new();
    let mut cur = vec![1 as Symbol; cells];
    loop {
        out.push(SymbolMatrix::new(side, side, cur.clone(), s).expect("valid coloring"));
        let mut i = cells;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (cur[i] as usize) < s {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
        }
    }
}

/// For each seed, draws `random_coloring(m, n, s, seed)` and checks which of
/// the `s^(side^2)` exact colorings of `K_{side,side}` occur in it.
pub fn corollary3_sweep(
    m: usize,
    n: usize,
    s: usize,
    side: usize,
    seeds: &[u64],
    limits: &Limits,
) -> Result<OccurrenceSweep> {
    if side == 0 || s == 0 {
        return Err(Error::InvalidArgument("side and s must be positive".into()));
    }
    if side > limits.sweep_max_side {
        return Err(Error::CapExceeded {
            what: format!("target side {side}"),
            limit: limits.sweep_max_side as u64,
        });
    }
    if s > limits.sweep_max_colors {
        return Err(Error::CapExceeded {
            what: format!("{s} colors"),
            limit: limits.sweep_max_colors as u64,
        });
    }
    let targets: Vec<ColoredPair> = all_colorings(side, s).iter().map(to_coloring).collect();
    let seeds = seeds
        .iter()
        .map(|&seed| {
            let host = to_coloring(&random_coloring(m, n, s, seed)?);
            let missing: Vec<Vec<Symbol>> = targets
                .iter()
                .filter(|t| !coloring_occurs(&host, t))
                .map(|t| crate::graphs::to_matrix(t).entries().to_vec())
                .collect();
            Ok(SeedOccurrences {
                seed,
                targets: targets.len(),
                missing_count: missing.len(),
                missing,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OccurrenceSweep {
        m,
        n,
        s,
        side,
        seeds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_symbol_is_constant() {
        let m = random_coloring(4, 5, 1, 99).unwrap();
        assert_eq!(m, SymbolMatrix::constant(4, 5, 1, 1).unwrap());
    }

    #[test]
    fn seeds_are_deterministic() {
        let a = random_coloring(6, 7, 3, 42).unwrap();
        assert_eq!(a, random_coloring(6, 7, 3, 42).unwrap());
        assert_ne!(a, random_coloring(6, 7, 3, 43).unwrap());
    }

    #[test]
    fn generator_is_pinned() {
        // Changing the generator or the fill order breaks seeded reproducibility.
        let m = random_coloring(2, 4, 4, 1).unwrap();
        assert_eq!(m.entries(), &[3, 2, 4, 1, 1, 3, 2, 1]);
    }

    #[test]
    fn colorings_enumeration() {
        assert_eq!(all_colorings(2, 2).len(), 16);
        assert_eq!(all_colorings(1, 3).len(), 3);
    }

    #[test]
    fn sweep_caps_and_trivial_cases() {
        let limits = Limits::default();
        assert!(corollary3_sweep(8, 8, 2, 3, &[1], &limits).is_err());
        assert!(corollary3_sweep(8, 8, 4, 2, &[1], &limits).is_err());
        let one = corollary3_sweep(3, 3, 1, 2, &[5], &limits).unwrap();
        assert_eq!(one.total_missing(), 0);
        let tiny = corollary3_sweep(2, 2, 2, 2, &[5], &limits).unwrap();
        assert_eq!(tiny.seeds[0].targets, 16);
        assert!(tiny.seeds[0].missing_count > 0);
    }

    #[test]
    fn density_window_on_constant_fails() {
        let c = to_coloring(&SymbolMatrix::constant(4, 4, 1, 2).unwrap());
        assert!(!density_window(&c, Ratio::new(1, 50)));
        let checker = to_coloring(&SymbolMatrix::from_rows(&[vec![1, 2], vec![2, 1]], 2).unwrap());
        assert!(density_window(&checker, Ratio::new(1, 50)));
    }
}
