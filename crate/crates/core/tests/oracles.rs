mod common;

use common::*;
use graph_braid::morse::morse_presentation;

#[test]
fn hexagon_has_six_vertices_and_six_edges() {
    assert_eq!(hexagon_counts(), vec![6, 6, 0]);
    let p = morse_presentation(&star_tree(3, 2), 2).unwrap();
    assert_eq!((p.names.len(), p.relators.len()), (1, 0));
}

#[test]
fn star_ranks_follow_the_closed_form() {
    for (n, k, rank) in [(2, 3, 1), (3, 3, 3), (4, 3, 6), (2, 4, 3), (3, 4, 11), (2, 5, 6)] {
        assert_eq!(star_rank(n, k), rank);
        let p = morse_presentation(&star_tree(k, n), n).unwrap();
        assert_eq!(p.names.len(), rank, "n={n} k={k}");
        assert!(p.relators.is_empty());
    }
}

#[test]
fn brute_force_abelianizations_agree() {
    for (name, n) in [("theta3", 2), ("star3", 2), ("vartheta3", 2), ("lollipop", 2), ("k4", 2)] {
        let (brute, morse) = abelianizations(&tree(name, n), n);
        assert_eq!(brute, morse, "{name} n={n}");
    }
}
