//! Patterns, canonical forms and the matrix/pattern relationship.

use pattern_edit::matrix::pattern_bijection;
use pattern_edit::{same_pattern, Pattern, SymbolMatrix};

fn main() -> pattern_edit::Result<()> {
    let a = SymbolMatrix::from_rows(&[vec![1, 2, 1], vec![1, 1, 2], vec![1, 2, 1]], 2)?;
    let b = SymbolMatrix::from_rows(&[vec![5, 3, 5], vec![5, 5, 3], vec![5, 3, 5]], 5)?;
    println!("A =\n{a}B =\n{b}");
    println!("same pattern: {}", same_pattern(&a, &b)?);
    println!("symbol bijection: {:?}", pattern_bijection(&a, &b)?);

    let p = a.pattern_of();
    println!("pattern of A ({} classes):\n{p}", p.num_classes());

    // Labels are free-form; the canonical form numbers classes by first appearance.
    let q = Pattern::inline("b b / b a")?;
    println!("canonical form of 'b b / b a':\n{}", q.canonicalize());
    println!("trivial? {}", q.is_trivial()?);
    Ok(())
}
