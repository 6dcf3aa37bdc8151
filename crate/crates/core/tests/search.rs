mod common;

use defset_core::search::{canonical_squares, enumerate_squares};
use defset_core::solver::verdict;
use defset_core::*;

fn opts(symmetry: bool, prune: bool) -> SearchOptions {
    SearchOptions {
        symmetry,
        prune,
        ..SearchOptions::default()
    }
}

#[test]
fn symmetry_reduction_agrees() {
    for n in 1..=2 {
        for k in n..=5 {
            let a = defining_number(n, k, &opts(true, true)).unwrap();
            let b = defining_number(n, k, &opts(false, true)).unwrap();
            assert_eq!(a.d_value, b.d_value, "n={n} k={k}");
            assert!(a.squares_examined <= b.squares_examined);
        }
    }
}

#[test]
fn pruning_agrees_with_unpruned() {
    for (n, k) in [
        (1, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (3, 4),
        (3, 5),
        (3, 6),
    ] {
        let a = defining_number(n, k, &opts(true, true)).unwrap();
        let b = defining_number(n, k, &opts(true, false)).unwrap();
        assert_eq!(a.d_value, b.d_value, "n={n} k={k}");
        assert_eq!(a.witness, b.witness, "n={n} k={k}");
        assert!(a.subsets_examined <= b.subsets_examined);
    }
    // Per square as well.
    for sq in enumerate_squares(2, 3, false).unwrap() {
        assert_eq!(
            min_defining_set_for_square(&sq, true).unwrap(),
            DefiningSet {
                subsets_examined: min_defining_set_for_square(&sq, true)
                    .unwrap()
                    .subsets_examined,
                ..min_defining_set_for_square(&sq, false).unwrap()
            }
        );
    }
}

#[test]
fn closed_forms_for_two_n_minus_one() {
    for n in 1..=3 {
        let r = defining_number(n, 2 * n - 1, &SearchOptions::default()).unwrap();
        assert_eq!(Some(r.d_value), r.known_value, "n={n}");
    }
}

#[test]
fn witnesses_reverify() {
    for (n, k) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (3, 5)] {
        let r = defining_number(n, k, &SearchOptions::default()).unwrap();
        assert_eq!(r.witness.colored_count(), r.d_value);
        assert_eq!(verdict(&r.witness), Verdict::Unique, "n={n} k={k}");
    }
}

#[test]
fn lower_bound_for_two_n_minus_two() {
    for n in 2..=3 {
        let r = defining_number(n, 2 * n - 2, &SearchOptions::default()).unwrap();
        assert!(r.d_value >= n * n - 8 * n / 5, "n={n}: {}", r.d_value);
    }
    // Not a closed form: computed here.
    let r = defining_number(3, 4, &SearchOptions::default()).unwrap();
    assert_eq!(r.known_value, None);
    assert_eq!(r.d_value, 5);
}

#[test]
fn classical_latin_squares() {
    // Smallest critical sets of classical Latin squares of orders 2..4.
    for (n, d) in [(2, 1), (3, 2), (4, 4)] {
        assert_eq!(
            defining_number(n, n, &SearchOptions::default())
                .unwrap()
                .d_value,
            d
        );
    }
}

#[test]
fn three_by_three_five_colors_square_bound() {
    for sq in canonical_squares(3, 5).unwrap() {
        assert!(min_defining_set_for_square(&sq, true).unwrap().size >= 7);
    }
}

#[test]
fn parallel_result_is_deterministic() {
    let one = defining_number(
        3,
        5,
        &SearchOptions {
            threads: Some(1),
            ..Default::default()
        },
    )
    .unwrap();
    let four = defining_number(
        3,
        5,
        &SearchOptions {
            threads: Some(4),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(one.d_value, four.d_value);
    assert_eq!(one.witness, four.witness);
}

#[test]
fn canonical_representatives_cover_all_squares() {
    let reps: std::collections::BTreeSet<Vec<u8>> = canonical_squares(3, 4)
        .unwrap()
        .iter()
        .map(defset_core::search::canonical_key)
        .collect();
    for sq in enumerate_squares(3, 4, false).unwrap() {
        assert!(reps.contains(&defset_core::search::canonical_key(&sq)));
    }
}
