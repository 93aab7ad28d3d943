//! Exact minimum edit distance, checked against brute force, and the bracket
//! returned when the node budget runs out.

use pattern_edit::{brute_force_min_edit, min_edit_distance, random_coloring, Limits, Pattern, SolverOptions};

fn main() -> pattern_edit::Result<()> {
    let diag = Pattern::inline("x y / y x")?;
    let targets = std::slice::from_ref(&diag);

    let small = random_coloring(3, 4, 2, 5)?;
    let exact = min_edit_distance(&small, targets, SolverOptions::default())?;
    let brute = brute_force_min_edit(&small, targets, &Limits::default())?;
    println!("{small}solver {} / brute force {brute} in {} nodes", exact.cost(), exact.nodes);
    for e in &exact.plan.edits {
        println!("  ({}, {}) -> {}", e.row + 1, e.col + 1, e.new);
    }

    let big = random_coloring(12, 12, 2, 5)?;
    let out = min_edit_distance(&big, targets, SolverOptions::with_budget(2_000))?;
    println!(
        "12x12 with 2000 nodes: exact {} bracket [{}, {}]",
        out.exact, out.lower_bound, out.upper_bound
    );
    Ok(())
}
