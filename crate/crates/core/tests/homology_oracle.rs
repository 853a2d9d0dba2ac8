mod common;

use common::*;
use gridhfk::complex::build_graded_complexes;
use gridhfk::homology::{gaussian_homology, reduce};
use gridhfk::{AlexanderRange, GridComplex, GridDiagram, HomologyComputation};
use std::collections::BTreeMap;

#[test]
fn graph_reduction_agrees_with_gaussian_elimination() {
    let mut rng = rng(2024);
    let mut pieces = 0;
    for k in 0..200 {
        let n = 2 + k % 5;
        let g = GridDiagram::random_knot(n, &mut rng).unwrap();
        let cx = GridComplex::new(&g).unwrap();
        for piece in build_graded_complexes(&cx, AlexanderRange::Full) {
            let mut by_reduction: BTreeMap<i32, u64> = BTreeMap::new();
            for class in reduce(&cx, &piece).unwrap() {
                *by_reduction.entry(class.maslov).or_default() += 1;
            }
            assert_eq!(by_reduction, gaussian_homology(&cx, &piece).unwrap(), "{g:?} A={}", piece.alexander());
            pieces += 1;
        }
    }
    assert!(pieces > 200);
}

#[test]
fn every_piece_satisfies_d_squared_zero() {
    let mut rng = rng(5);
    for n in 3..=6 {
        let g = GridDiagram::random_knot(n, &mut rng).unwrap();
        let cx = GridComplex::new(&g).unwrap();
        for piece in build_graded_complexes(&cx, AlexanderRange::Full) {
            assert!(piece.d_squared_is_zero());
        }
    }
}

#[test]
fn nonnegative_range_matches_full_range() {
    let mut rng = rng(99);
    for k in 0..40 {
        let g = GridDiagram::random_knot(3 + k % 4, &mut rng).unwrap();
        let full = HomologyComputation::run(&g, AlexanderRange::Full).unwrap().hfk().unwrap();
        let half = HomologyComputation::run(&g, AlexanderRange::NonNegative).unwrap().hfk().unwrap();
        assert_eq!(full, half, "{g:?}");
        assert!(full.is_symmetric());
        let chi = full.euler_characteristic();
        assert!(chi.is_symmetric());
        assert_eq!(chi.eval_at_one().abs(), 1);
    }
}

/// Mean number of boundary terms over uniformly sampled generators.
fn mean_boundary_count(cx: &GridComplex, mode: gridhfk::DiffMode, samples: usize, seed: u64) -> f64 {
    use rand::seq::SliceRandom;
    let mut rng = rng(seed);
    let mut sigma: Vec<u8> = (0..cx.size() as u8).collect();
    let mut total = 0;
    for _ in 0..samples {
        sigma.shuffle(&mut rng);
        total += cx.boundary(&sigma, mode).len();
    }
    total as f64 / samples as f64
}

#[test]
fn boundary_terms_per_generator_at_size_ten() {
    for name in ["10_154", "10_161", "11n_81"] {
        let cx = GridComplex::new(&fixture_grid(name)).unwrap();
        for mode in [gridhfk::DiffMode::Full, gridhfk::DiffMode::Graded] {
            let mean = mean_boundary_count(&cx, mode, 5000, 1);
            assert!((3.5..=14.0).contains(&mean), "{name} {mode:?}: mean boundary count {mean}");
        }
    }
}
