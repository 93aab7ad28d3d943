//! Worst-case edit distance over all small matrices, up to symmetry.

use pattern_edit::{extremal_f, Limits, Pattern};

fn main() -> pattern_edit::Result<()> {
    let p = Pattern::inline("x x / x y")?;
    let limits = Limits::default();
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let report = extremal_f(m, n, 2, &p, &limits)?;
        println!(
            "f({m},{n};2) = {} <= {} over {} orbit representatives, witness:\n{}",
            report.f_value, report.upper_bound, report.representatives, report.witness_matrix
        );
    }
    Ok(())
}
