//! Every 2-coloring of K_{2,2} shows up in a random 2-coloring of K_{16,16}.

use pattern_edit::{corollary3_sweep, Limits};

fn main() -> pattern_edit::Result<()> {
    let sweep = corollary3_sweep(16, 16, 2, 2, &[1, 2, 3], &Limits::default())?;
    for s in &sweep.seeds {
        println!("seed {}: {}/{} occur", s.seed, s.targets - s.missing_count, s.targets);
    }
    Ok(())
}
