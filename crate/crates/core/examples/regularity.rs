//! Epsilon-regularity of a colored bipartite pair, exhaustive and sampled.

use pattern_edit::{is_epsilon_regular, random_coloring, to_coloring, Checker, Epsilon, Limits, SymbolMatrix};

fn main() -> pattern_edit::Result<()> {
    let limits = Limits::default();
    let rows: Vec<Vec<u16>> = (0..8).map(|i| vec![if i < 4 { 1 } else { 2 }; 8]).collect();
    let half = to_coloring(&SymbolMatrix::from_rows(&rows, 2)?);
    let eps: Epsilon = "1/4".parse()?;
    let v = is_epsilon_regular(&half, 1, eps, Checker::Exhaustive, &limits)?;
    println!("half split: regular {}, witness {:?}", v.regular, v.record().witness);

    let noisy = to_coloring(&random_coloring(60, 60, 2, 3)?);
    let v = is_epsilon_regular(&noisy, 1, "0.3".parse()?, Checker::Sampled { samples: 5_000, seed: 1 }, &limits)?;
    println!(
        "random 60x60: density {}, regular {} (definitive {})",
        v.global_density, v.regular, v.definitive
    );
    Ok(())
}
