//! Cross-checks of the search routines against definition-level oracles.

mod common;

use common::*;
use pattern_edit::containment::{enumerate_occurrences, find_occurrence, pack_disjoint, Mode, OccurrenceQuery};
use pattern_edit::editing::{brute_force_min_edit, extremal_f, min_edit_distance, SolverOptions};
use pattern_edit::experiments::random_coloring;
use pattern_edit::{Limits, Pattern, SymbolMatrix};

/// f(2,2;2,A) and f(2,3;2,A) for A = {{(1,1),(1,2),(2,1)},{(2,2)}}, computed by
/// `oracle_extremal` below (plain enumeration, no symmetry reduction).
const F_2X2: usize = 1;
const F_2X3: usize = 1;

fn oracle_extremal(m: usize, n: usize, s: usize, p: &Pattern) -> usize {
    all_matrices(m, n, s)
        .iter()
        .map(|a| oracle_dist(a, std::slice::from_ref(p)))
        .max()
        .unwrap()
}

#[test]
fn extremal_regression_constants_match_oracle() {
    assert_eq!(oracle_extremal(2, 2, 2, &corner()), F_2X2);
    assert_eq!(oracle_extremal(2, 3, 2, &corner()), F_2X3);
    let limits = Limits::default();
    assert_eq!(extremal_f(2, 2, 2, &corner(), &limits).unwrap().f_value, F_2X2);
    assert_eq!(extremal_f(2, 3, 2, &corner(), &limits).unwrap().f_value, F_2X3);
}

#[test]
fn extremal_is_transpose_invariant() {
    let limits = Limits::default();
    for p in [corner(), diagonal(), Pattern::inline("a b").unwrap()] {
        for (m, n) in [(2, 3), (1, 4), (2, 2)] {
            let f = extremal_f(m, n, 2, &p, &limits).unwrap();
            let ft = extremal_f(n, m, 2, &p.transpose(), &limits).unwrap();
            assert_eq!(f.f_value, ft.f_value, "{m}x{n} {p:?}");
            assert_eq!(f.f_value, oracle_extremal(m, n, 2, &p));
        }
    }
}

#[test]
fn containment_agrees_with_oracle_up_to_4x4() {
    // Every 2x2 and 1x3 pattern against every 3x3 binary matrix, then a
    // random sample of 4x4 ternary matrices against all 3x3 patterns with
    // at most 3 classes drawn from a fixed subset.
    let mut patterns = Pattern::all_concrete(2, 2, None);
    patterns.extend(Pattern::all_concrete(1, 3, None));
    patterns.extend(Pattern::all_concrete(2, 3, Some(2)));
    for m in all_matrices(3, 3, 2) {
        for p in &patterns {
            let got = find_occurrence(&OccurrenceQuery::new(p, &m)).unwrap();
            assert_eq!(got.is_some(), oracle_contains(p, &m), "{p:?} in {m:?}");
        }
    }
    let big: Vec<Pattern> = Pattern::all_concrete(3, 3, Some(3)).into_iter().step_by(97).collect();
    for seed in 0..40 {
        let m = random_coloring(4, 4, 3, seed).unwrap();
        for p in &big {
            let got = find_occurrence(&OccurrenceQuery::new(p, &m)).unwrap();
            assert_eq!(got.is_some(), oracle_contains(p, &m));
            if let Some(o) = got {
                assert!(o.verify(p, &m));
            }
        }
    }
}

#[test]
fn enumeration_matches_oracle_placements() {
    let m = mat(&[&[1, 1], &[1, 2]], 2);
    let occ = enumerate_occurrences(&OccurrenceQuery::new(&corner(), &m)).unwrap();
    let oracle = oracle_placements(&corner(), &m);
    assert_eq!(occ.len(), oracle.len());
    assert_eq!(occ.len(), 1);
    assert!(occ.iter().all(|o| o.class_symbol[0] == 1));

    for seed in 0..20 {
        let m = random_coloring(3, 4, 2, seed).unwrap();
        for p in [corner(), diagonal()] {
            let occ = enumerate_occurrences(&OccurrenceQuery::new(&p, &m)).unwrap();
            let mut got: Vec<_> = occ.iter().map(|o| (o.row_map.clone(), o.col_map.clone())).collect();
            let sorted = {
                let mut s = got.clone();
                s.sort();
                s
            };
            assert_eq!(got, sorted, "enumeration order is lexicographic");
            got.sort();
            let mut want = oracle_placements(&p, &m);
            want.sort();
            assert_eq!(got, want);
        }
    }
}

#[test]
fn ordered_mode_matches_monotone_oracle() {
    for seed in 0..30 {
        let m = random_coloring(3, 4, 2, seed).unwrap();
        for p in [corner(), diagonal()] {
            let want = oracle_placements(&p, &m)
                .into_iter()
                .filter(|(r, c)| r.windows(2).all(|w| w[0] < w[1]) && c.windows(2).all(|w| w[0] < w[1]))
                .count();
            let got = enumerate_occurrences(&OccurrenceQuery::new(&p, &m).with_mode(Mode::Ordered))
                .unwrap()
                .len();
            assert_eq!(got, want);
        }
    }
}

#[test]
fn solver_matches_definition_oracle_2x3() {
    for p in [corner(), diagonal()] {
        for m in all_matrices(2, 3, 2) {
            let exact = min_edit_distance(&m, std::slice::from_ref(&p), SolverOptions::default()).unwrap();
            assert!(exact.exact);
            assert_eq!(exact.cost(), oracle_dist(&m, std::slice::from_ref(&p)));
        }
    }
}

#[test]
fn solver_matches_brute_force_random_3x4() {
    let limits = Limits::default();
    for seed in 0..25 {
        for s in [2, 3] {
            let m = random_coloring(3, 4, s, seed).unwrap();
            if s == 3 && seed % 5 != 0 {
                continue;
            }
            for p in [corner(), diagonal()] {
                let targets = std::slice::from_ref(&p);
                let exact = min_edit_distance(&m, targets, SolverOptions::default()).unwrap();
                let brute = brute_force_min_edit(&m, targets, &limits).unwrap();
                assert!(exact.exact);
                assert_eq!(exact.cost(), brute, "seed {seed} s {s} {p:?}");
                let packing = pack_disjoint(&OccurrenceQuery::new(&p, &m)).unwrap().len();
                let merge = pattern_edit::merge_smallest_classes(&m, 2).unwrap().cost();
                assert!(packing <= exact.cost() && exact.cost() <= merge);
            }
        }
    }
}

#[test]
fn wildcard_target_costs_no_more_than_any_member() {
    let wild = Pattern::inline("1 2 / 1 *").unwrap();
    let expanded = wild.expand_wildcards();
    for seed in 0..15 {
        let m = random_coloring(3, 3, 3, seed).unwrap();
        let all = min_edit_distance(&m, &expanded, SolverOptions::default()).unwrap();
        assert!(all.exact);
        for member in expanded.iter().filter(|p| p.num_classes() >= 2) {
            let one = min_edit_distance(&m, std::slice::from_ref(member), SolverOptions::default()).unwrap();
            // Forbidding the wildcard pattern forbids every expansion, so it
            // costs at least as much as forbidding any single member; the
            // merged result is free of each member.
            assert!(one.cost() <= all.cost());
        }
        assert_eq!(all.cost(), oracle_dist(&m, &expanded));
    }
}

#[test]
fn solver_output_is_pattern_free_and_consistent() {
    for seed in 0..10 {
        let m = random_coloring(5, 5, 2, seed).unwrap();
        let out = min_edit_distance(&m, &[diagonal()], SolverOptions::default()).unwrap();
        assert!(out.exact);
        assert_eq!(m.dist(&out.plan.result).unwrap(), out.cost());
        assert!(!oracle_contains(&diagonal(), &out.plan.result));
    }
}

#[test]
fn packing_on_block_diagonal_instance() {
    let m = mat(
        &[&[1, 1, 3, 3], &[1, 2, 3, 3], &[3, 3, 1, 1], &[3, 3, 1, 2]],
        3,
    );
    let packing = pack_disjoint(&OccurrenceQuery::new(&corner(), &m)).unwrap();
    assert!(packing.len() >= 2);
    let exact = min_edit_distance(&m, &[corner()], SolverOptions::default()).unwrap();
    assert!(packing.len() <= exact.cost());
}

#[test]
fn constant_matrices_need_no_edits() {
    let m = SymbolMatrix::constant(3, 4, 2, 3).unwrap();
    assert_eq!(brute_force_min_edit(&m, &[corner(), diagonal()], &Limits::default()).unwrap(), 0);
}
