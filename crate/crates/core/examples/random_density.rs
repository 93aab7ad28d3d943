//! Color densities of a seeded uniform random coloring.

use num_rational::Ratio;
use pattern_edit::experiments::density_window;
use pattern_edit::{random_coloring, to_coloring};

fn main() -> pattern_edit::Result<()> {
    for seed in [1, 2, 3] {
        let pair = to_coloring(&random_coloring(200, 200, 4, seed)?);
        let ds: Vec<String> = (1..=4).map(|c| format!("{:.4}", to_f64(pair.global_density(c)))).collect();
        println!("seed {seed}: {} inside 1/4 +- 0.02: {}", ds.join(" "), density_window(&pair, Ratio::new(1, 50)));
    }
    Ok(())
}

fn to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
