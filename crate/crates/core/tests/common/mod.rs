//! Helpers shared by the integration tests, including gradings computed
//! straight from point configurations as an independent check.

#![allow(dead_code)]

use gridhfk::GridDiagram;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn grid(x: &[usize], o: &[usize]) -> GridDiagram {
    GridDiagram::new(x.to_vec(), o.to_vec()).unwrap()
}

pub fn fixture_grid(name: &str) -> GridDiagram {
    let path = format!("{}/fixtures/{name}.grid", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{path}: {e}"))
        .parse()
        .unwrap()
}

/// Pairs `(a, b)` with `a` strictly south-west of `b`, points in doubled coordinates.
fn sw_pairs(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    let mut count = 0;
    for p in a {
        for q in b {
            if p.0 < q.0 && p.1 < q.1 {
                count += 1;
            }
        }
    }
    count
}

/// Twice the symmetrized pair count.
fn j2(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    sw_pairs(a, b) + sw_pairs(b, a)
}

/// `J(x, x) - 2 J(x, P) + J(P, P) + 1`, with `P` the marks at cell centres.
fn point_maslov(sigma: &[u8], marks: &[usize]) -> i64 {
    let x: Vec<(i64, i64)> = sigma.iter().enumerate().map(|(i, &r)| (2 * i as i64, 2 * r as i64)).collect();
    let p: Vec<(i64, i64)> = marks
        .iter()
        .enumerate()
        .map(|(c, &r)| (2 * c as i64 + 1, 2 * r as i64 + 1))
        .collect();
    let twice = j2(&x, &x) - 2 * j2(&x, &p) + j2(&p, &p) + 2;
    assert_eq!(twice % 2, 0);
    twice / 2
}

/// Maslov grading from the O marks.
pub fn oracle_maslov(g: &GridDiagram, sigma: &[u8]) -> i64 {
    point_maslov(sigma, g.o_rows())
}

/// Alexander grading as half the difference of the O and X Maslov gradings,
/// shifted by `(n - 1) / 2`.
pub fn oracle_alexander(g: &GridDiagram, sigma: &[u8]) -> i64 {
    let diff = point_maslov(sigma, g.o_rows()) - point_maslov(sigma, g.x_rows()) - (g.size() as i64 - 1);
    assert_eq!(diff % 2, 0);
    diff / 2
}

/// Every permutation of `0..n`, in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
}
