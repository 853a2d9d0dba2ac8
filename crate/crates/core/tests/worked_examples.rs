//! The five-column trefoil grid and the six-column figure-eight grid,
//! checked generator by generator.

mod common;

use common::*;
use gridhfk::spectral::{d1_rank_unstripped, e2_page};
use gridhfk::{AlexanderRange, DiffMode, GridComplex, HomologyComputation, TauResult};

/// Parses one-based digit strings such as "51234" into zero-based rows.
fn perm(digits: &str) -> Vec<u8> {
    digits.bytes().map(|b| b - b'1').collect()
}

#[test]
fn trefoil_census_of_nonnegative_generators() {
    let g = fixture_grid("trefoil_dt");
    let cx = GridComplex::new(&g).unwrap();
    let mut found: Vec<(Vec<u8>, i32, i32)> = cx
        .enumerate(Some(0))
        .into_iter()
        .map(|gen| {
            let m = cx.maslov(&gen.sigma).unwrap();
            (gen.sigma, gen.alexander, m)
        })
        .collect();
    found.sort();
    let mut expected = vec![(perm("51234"), 1, 2)];
    for p in ["15234", "41235", "51243", "51324", "52134"] {
        expected.push((perm(p), 0, 1));
    }
    expected.sort();
    assert_eq!(found, expected);

    let mut boundary: Vec<Vec<u8>> = cx
        .boundary(&perm("51234"), DiffMode::Full)
        .iter()
        .map(|t| t.apply(&perm("51234")))
        .collect();
    boundary.sort();
    let mut five: Vec<Vec<u8>> = ["15234", "41235", "51243", "51324", "52134"].iter().map(|p| perm(p)).collect();
    five.sort();
    assert_eq!(boundary, five);

    let comp = HomologyComputation::run(&g, AlexanderRange::NonNegative).unwrap();
    assert_eq!(d1_rank_unstripped(&comp, 1, 2).unwrap(), 1);
    let pages = e2_page(&comp).unwrap();
    assert_eq!(pages.d1_ranks.to_string(), "q^2t");
    assert_eq!(pages.tau().unwrap(), TauResult::Value(-1));
}

#[test]
fn figure_eight_census_and_pages() {
    let g = fixture_grid("figure_eight");
    let cx = GridComplex::new(&g).unwrap();
    let gens = cx.enumerate(Some(0));
    let top: Vec<_> = gens.iter().filter(|g| g.alexander == 1).collect();
    assert_eq!(top.len(), 1);
    assert_eq!(top[0].sigma, perm("321456"));
    assert_eq!(cx.maslov(&top[0].sigma).unwrap(), 1);
    let mut zero: Vec<Vec<u8>> = gens.iter().filter(|g| g.alexander == 0).map(|g| g.sigma.clone()).collect();
    zero.sort();
    let mut expected: Vec<Vec<u8>> = ["231456", "312456", "321465", "321546", "324156", "326451", "421356", "621453"]
        .iter()
        .map(|p| perm(p))
        .collect();
    expected.sort();
    assert_eq!(zero, expected);

    for range in [AlexanderRange::NonNegative, AlexanderRange::Full] {
        let comp = HomologyComputation::run(&g, range).unwrap();
        let pages = e2_page(&comp).unwrap();
        assert_eq!(pages.e1.to_string(), "q^{-1}t^{-1}+3+qt");
        assert_eq!(pages.d1_ranks.get(1, 1), 1);
        assert_eq!(pages.d1_ranks.get(0, 0), 1);
        assert_eq!(pages.e2.to_string(), "1");
        assert_eq!(pages.tau().unwrap(), TauResult::Value(0));
    }
}
