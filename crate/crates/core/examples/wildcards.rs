//! Wildcard cells expand into every consistent concrete pattern.

use pattern_edit::Pattern;

fn main() -> pattern_edit::Result<()> {
    let p = Pattern::inline("x * / * y")?;
    let expanded = p.expand_wildcards();
    println!("{p}expands to {} concrete patterns:", expanded.len());
    for q in &expanded {
        println!("{q}");
    }
    Ok(())
}
