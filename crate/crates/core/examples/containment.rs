//! Finding and enumerating occurrences, unordered and ordered.

use pattern_edit::{enumerate_occurrences, find_occurrence, pack_disjoint, Mode, OccurrenceQuery, Pattern, SymbolMatrix};

fn main() -> pattern_edit::Result<()> {
    let m = SymbolMatrix::from_rows(&[vec![1, 2, 1], vec![1, 1, 2], vec![1, 2, 1]], 2)?;
    let p = Pattern::inline("x x / x y")?;

    let q = OccurrenceQuery::new(&p, &m);
    if let Some(o) = find_occurrence(&q)? {
        let r = o.record();
        println!("first occurrence: rows {:?} cols {:?}\n{}", r.row_map, r.col_map, o.render(&m));
    }
    let all = enumerate_occurrences(&q)?;
    let ordered = enumerate_occurrences(&q.with_mode(Mode::Ordered))?;
    println!("{} occurrences unordered, {} ordered", all.len(), ordered.len());
    println!("{} cell-disjoint occurrences packed", pack_disjoint(&q)?.len());
    Ok(())
}
