mod common;

use common::*;
use gridhfk::{GridComplex, GridDiagram};

fn compare_all(g: &GridDiagram) {
    let cx = GridComplex::new(g).unwrap();
    for sigma in all_permutations(g.size()) {
        assert_eq!(
            cx.maslov(&sigma).unwrap() as i64,
            oracle_maslov(g, &sigma),
            "Maslov of {sigma:?} on {g:?}"
        );
        assert_eq!(
            cx.alexander(&sigma) as i64,
            oracle_alexander(g, &sigma),
            "Alexander of {sigma:?} on {g:?}"
        );
    }
}

#[test]
fn gradings_match_point_formula_on_named_grids() {
    compare_all(&grid(&[0, 1], &[1, 0]));
    compare_all(&GridDiagram::torus(2, 3).unwrap());
    compare_all(&fixture_grid("figure_eight"));
}

#[test]
fn gradings_match_point_formula_on_random_grids() {
    let mut rng = rng(11);
    for n in 2..=6 {
        for _ in 0..8 {
            compare_all(&GridDiagram::random_knot(n, &mut rng).unwrap());
        }
    }
}
