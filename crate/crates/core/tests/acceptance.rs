//! Acceptance checks. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line under `cargo test`; exits nonzero if any fails.

mod common;

use std::time::Instant;

use common::*;
use num_rational::Ratio;
use pattern_edit::experiments::density_window;
use pattern_edit::{
    brute_force_min_edit, contains, corollary3_sweep, estimate_f_monte_carlo, extremal_f,
    is_epsilon_regular, merge_smallest_classes, min_edit_distance, random_coloring, to_coloring,
    Checker, Epsilon, ExperimentConfig, Limits, OccurrenceQuery, Pattern, SolverOptions, Symbol,
    SymbolMatrix,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeds used wherever a criterion asks for three documented seeds.
const SEEDS: [u64; 3] = [1, 2, 3];

/// Frozen at first computation by the definition-level oracle in
/// `tests/common`; re-derived below on every run.
const F_2X2: usize = 1;
const F_2X3: usize = 1;

/// Exact-solver node budget per trial in the trend sweep.
const TREND_BUDGET: u64 = 20_000;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Every concrete pattern with exactly two classes and shape up to 2x2.
fn two_class_patterns() -> Vec<Pattern> {
    [(1, 2), (2, 1), (2, 2)]
        .into_iter()
        .flat_map(|(k, l)| Pattern::all_concrete(k, l, Some(2)))
        .filter(|p| p.num_classes() == 2)
        .collect()
}

fn upper_bound_exact() -> Check {
    let patterns = two_class_patterns();
    ensure(patterns.len() == 9, format!("expected 9 patterns, got {}", patterns.len()))?;
    let mut worst = 0;
    for seed in 0..100u64 {
        let m = random_coloring(30, 30, 4, seed).map_err(e)?;
        let plan = merge_smallest_classes(&m, 2).map_err(e)?;
        worst = worst.max(plan.cost());
        ensure(plan.cost() <= 675, format!("seed {seed}: cost {} > 675", plan.cost()))?;
        ensure(m.dist(&plan.result).map_err(e)? == plan.cost(), format!("seed {seed}: cost/dist mismatch"))?;
        for p in &patterns {
            let found = contains(&OccurrenceQuery::new(p, &plan.result)).map_err(e)?;
            ensure(!found, format!("seed {seed}: result still contains\n{p}"))?;
        }
    }
    Ok(format!("100 matrices x 9 patterns free, max cost {worst} <= 675"))
}

fn binary_matrices(m: usize, n: usize) -> impl Iterator<Item = SymbolMatrix> {
    (0u32..1 << (m * n)).map(move |bits| {
        let entries = (0..m * n).map(|i| 1 + ((bits >> i) & 1) as Symbol).collect();
        SymbolMatrix::new(m, n, entries, 2).unwrap()
    })
}

fn oracle_equivalence() -> Check {
    let limits = Limits::default();
    let mut count = 0;
    for (shape, pattern) in [((3, 3), corner()), ((2, 3), diagonal())] {
        let targets = std::slice::from_ref(&pattern);
        for m in binary_matrices(shape.0, shape.1) {
            let solved = min_edit_distance(&m, targets, SolverOptions::default()).map_err(e)?;
            let brute = brute_force_min_edit(&m, targets, &limits).map_err(e)?;
            ensure(solved.exact, format!("inexact on\n{m}"))?;
            ensure(solved.cost() == brute, format!("solver {} vs brute {brute} on\n{m}", solved.cost()))?;
            count += 1;
        }
    }
    ensure(count == 512 + 64, format!("checked {count} matrices"))?;
    Ok("512 3x3 + 64 2x3 binary matrices agree".into())
}

fn extremal_sanity() -> Check {
    let limits = Limits::default();
    let p = corner();
    let mut parts = Vec::new();
    for ((m, n), frozen) in [((2, 2), F_2X2), ((2, 3), F_2X3)] {
        let report = extremal_f(m, n, 2, &p, &limits).map_err(e)?;
        let floor = report.upper_bound.to_integer() as usize;
        let oracle = all_matrices(m, n, 2).iter().map(|a| oracle_dist(a, std::slice::from_ref(&p))).max().unwrap();
        ensure(report.f_value <= floor, format!("f({m},{n}) = {} > {floor}", report.f_value))?;
        ensure(report.f_value == frozen, format!("f({m},{n}) = {} != frozen {frozen}", report.f_value))?;
        ensure(oracle == frozen, format!("oracle f({m},{n}) = {oracle} != frozen {frozen}"))?;
        parts.push(format!("f({m},{n};2) = {} <= {floor}", report.f_value));
    }
    Ok(parts.join(", "))
}

fn lower_bound_trend() -> Check {
    let mut parts = Vec::new();
    for seed in SEEDS {
        let cfg = ExperimentConfig {
            sizes: vec![(6, 6), (8, 8), (10, 10), (12, 12)],
            s: 2,
            pattern: diagonal(),
            trials: 20,
            seed,
            solver_budget: TREND_BUDGET,
        };
        let report = estimate_f_monte_carlo(&cfg).map_err(e)?;
        ensure(report.r == 2, "diagonal pattern must have two classes")?;
        let lows: Vec<String> = report.rows.iter().map(|r| format!("{:.3}", r.ratio_lower)).collect();
        ensure(
            report.lower_ratios_nondecreasing(),
            format!("seed {seed}: lower ratios decrease: {}", lows.join(" ")),
        )?;
        ensure(report.upper_within_bound(), format!("seed {seed}: upper ratio above 1/2"))?;
        parts.push(format!("seed {seed} [{}]", lows.join(" ")));
    }
    Ok(parts.join("; "))
}

fn density_window_check() -> Check {
    let eps = Ratio::new(2, 100);
    for seed in SEEDS {
        let pair = to_coloring(&random_coloring(200, 200, 4, seed).map_err(e)?);
        let ds: Vec<f64> = (1..=4).map(|c| pair_density(&pair, c)).collect();
        ensure(density_window(&pair, eps), format!("seed {seed}: densities {ds:?}"))?;
    }
    Ok(format!("seeds {SEEDS:?} within 1/4 +- 0.02"))
}

fn pair_density(pair: &pattern_edit::ColoredPair, c: Symbol) -> f64 {
    let d = pair.global_density(c);
    *d.numer() as f64 / *d.denom() as f64
}

fn corollary_occurrence() -> Check {
    let sweep = corollary3_sweep(16, 16, 2, 2, &SEEDS, &Limits::default()).map_err(e)?;
    for s in &sweep.seeds {
        ensure(s.targets == 16, format!("seed {}: {} targets", s.seed, s.targets))?;
        ensure(s.missing_count == 0, format!("seed {}: {} missing", s.seed, s.missing_count))?;
    }
    Ok(format!("all 16 colorings occur for seeds {SEEDS:?}"))
}

fn regularity_ground_truth() -> Check {
    let limits = Limits::default();
    // Top half of the left side sees only color 1, bottom half only color 2.
    let rows: Vec<Vec<Symbol>> = (0..8).map(|i| vec![if i < 4 { 1 } else { 2 }; 8]).collect();
    let half = to_coloring(&SymbolMatrix::from_rows(&rows, 2).map_err(e)?);
    let eps = Epsilon::from_fraction(1, 4).map_err(e)?;
    let v = is_epsilon_regular(&half, 1, eps, Checker::Exhaustive, &limits).map_err(e)?;
    ensure(!v.regular && v.definitive, "half-split reported regular")?;
    ensure(v.witness_holds(&half), "witness does not re-verify")?;
    let w = v.witness.as_ref().unwrap();
    // Independent recount straight from the cell colors.
    let hits = w.left.iter().flat_map(|&x| w.right.iter().map(move |&y| (x, y))).filter(|&(x, y)| half.color(x, y) == 1).count();
    let d = Ratio::new(hits as u64, (w.left.len() * w.right.len()) as u64);
    let dev = if d > Ratio::new(1, 2) { d - Ratio::new(1, 2) } else { Ratio::new(1, 2) - d };
    ensure(d == w.density && dev >= Ratio::new(1, 4), format!("recount density {d}"))?;
    ensure(w.left.len() >= 2 && w.right.len() >= 2, "witness subsets too small")?;

    for side in [4, 8] {
        let mono = to_coloring(&SymbolMatrix::constant(side, side, 1, 2).map_err(e)?);
        for (p, q) in [(1, 10), (3, 10), (1, 2)] {
            let eps = Epsilon::from_fraction(p, q).map_err(e)?;
            for color in [1, 2] {
                let v = is_epsilon_regular(&mono, color, eps, Checker::Exhaustive, &limits).map_err(e)?;
                ensure(v.regular && v.definitive, format!("monochromatic {side}x{side} color {color} irregular at {p}/{q}"))?;
            }
        }
    }

    let pair = to_coloring(&random_coloring(12, 12, 3, 7).map_err(e)?);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let idx: Vec<usize> = (0..12).collect();
    for _ in 0..1000 {
        let a = rng.gen_range(1..=12);
        let b = rng.gen_range(1..=12);
        let left: Vec<usize> = idx.choose_multiple(&mut rng, a).copied().collect();
        let right: Vec<usize> = idx.choose_multiple(&mut rng, b).copied().collect();
        let mut total = Ratio::from_integer(0u64);
        for c in 1..=3 {
            total += pair.color_density(c, &left, &right).map_err(e)?;
        }
        ensure(total == Ratio::from_integer(1), format!("densities sum to {total}"))?;
    }
    Ok(format!("half-split irregular (witness {}x{}, density {}), monochromatic regular, 1000 sums exact", w.left.len(), w.right.len(), w.density))
}

fn invariance_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let patterns: Vec<Pattern> = [(1, 2), (2, 1), (2, 2)]
        .into_iter()
        .flat_map(|(k, l)| Pattern::all_concrete(k, l, None))
        .filter(|p| p.num_classes() >= 2)
        .collect();
    let mut found = 0;
    for case in 0..200 {
        let m = rng.gen_range(2..=4);
        let n = rng.gen_range(2..=4);
        let s = rng.gen_range(2..=3);
        let entries = (0..m * n).map(|_| rng.gen_range(1..=s as Symbol)).collect();
        let a = SymbolMatrix::new(m, n, entries, s).map_err(e)?;
        let p = patterns.choose(&mut rng).unwrap().clone();

        let mut rows: Vec<usize> = (0..m).collect();
        let mut cols: Vec<usize> = (0..n).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        let mut labels: Vec<Symbol> = (1..=s as Symbol).collect();
        labels.shuffle(&mut rng);
        let mut map = vec![0];
        map.extend(labels);
        let moved = a.permute_rows(&rows).permute_cols(&cols).relabel(&map, s).map_err(e)?;

        let verdict = |x: &SymbolMatrix| contains(&OccurrenceQuery::new(&p, x)).map_err(e);
        let cost = |x: &SymbolMatrix| -> Result<usize, String> {
            let out = min_edit_distance(x, std::slice::from_ref(&p), SolverOptions::default()).map_err(e)?;
            ensure(out.exact, "inexact")?;
            Ok(out.cost())
        };
        let (v0, v1) = (verdict(&a)?, verdict(&moved)?);
        ensure(v0 == v1, format!("case {case}: containment changed"))?;
        ensure(v0 == oracle_contains(&p, &a), format!("case {case}: containment disagrees with oracle"))?;
        let (c0, c1) = (cost(&a)?, cost(&moved)?);
        ensure(c0 == c1, format!("case {case}: cost {c0} vs {c1}"))?;
        found += v0 as usize;
    }
    Ok(format!("200 instances invariant ({found} containing)"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("upper bound by class merging", upper_bound_exact),
        ("solver equals brute force", oracle_equivalence),
        ("extremal values on tiny shapes", extremal_sanity),
        ("lower-bound trend", lower_bound_trend),
        ("random density window", density_window_check),
        ("every small coloring occurs", corollary_occurrence),
        ("regularity ground truth", regularity_ground_truth),
        ("relabel and permutation invariance", invariance_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
