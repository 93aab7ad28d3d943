//! The class-merging construction: merge the smallest symbol classes into the
//! largest so fewer than r symbols remain.

use pattern_edit::{contains, merge_smallest_classes, random_coloring, theoretical_bound, OccurrenceQuery, Pattern};

fn main() -> pattern_edit::Result<()> {
    let (m, n, s) = (30, 30, 4);
    let matrix = random_coloring(m, n, s, 1)?;
    println!("histogram: {:?}", &matrix.histogram()[1..]);
    for r in 2..=s {
        let plan = merge_smallest_classes(&matrix, r)?;
        println!(
            "r = {r}: cost {} (bound {}), symbols left {}",
            plan.cost(),
            theoretical_bound(m, n, s, r)?,
            plan.result.distinct_symbols()
        );
    }
    let plan = merge_smallest_classes(&matrix, 2)?;
    let diag = Pattern::inline("x y / y x")?;
    println!("diagonal still present: {}", contains(&OccurrenceQuery::new(&diag, &plan.result))?);
    Ok(())
}
