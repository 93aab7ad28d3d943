//! Seeded Monte Carlo sweep of edit-distance brackets against the bound.
//! Pass a node budget as the first argument (default 2000, 0 = packing only).

use pattern_edit::{estimate_f_monte_carlo, ExperimentConfig, Pattern};

fn main() -> pattern_edit::Result<()> {
    let budget = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2_000);
    let cfg = ExperimentConfig {
        sizes: vec![(6, 6), (8, 8), (10, 10)],
        s: 2,
        pattern: Pattern::inline("x y / y x")?,
        trials: 10,
        seed: 1,
        solver_budget: budget,
    };
    let report = estimate_f_monte_carlo(&cfg)?;
    print!("{}", report.table());
    println!(
        "upper within bound: {}, lower ratios nondecreasing: {}",
        report.upper_within_bound(),
        report.lower_ratios_nondecreasing()
    );
    Ok(())
}
