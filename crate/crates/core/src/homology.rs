//! Z/2 homology of the graded pieces by graph reduction, a dense
//! elimination oracle, and assembly of the bigraded Poincaré polynomial.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{build_graded_complexes, AlexanderRange, ComplexError, GradedComplex, GridComplex};
use crate::grid::GridDiagram;
use crate::poly::{BigradedPoly, LaurentPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("surviving class in Alexander grading {alexander} mixes Maslov gradings {first} and {second}")]
    InconsistentMaslov { alexander: i32, first: i32, second: i32 },
}

/// Merge of two sorted, duplicate-free lists into their symmetric difference.
pub fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn insert_sorted(v: &mut Vec<u32>, x: u32) {
    if let Err(pos) = v.binary_search(&x) {
        v.insert(pos, x);
    }
}

fn remove_sorted(v: &mut Vec<u32>, x: u32) {
    if let Ok(pos) = v.binary_search(&x) {
        v.remove(pos);
    }
}

/// Directed graph whose vertices are labelled by sets of basis elements;
/// an edge `u -> v` means the boundary of chain `u` has a nonzero `v` component.
///
/// Cancelling an edge `i -> j` deletes both vertices and replaces the label of
/// every other `k -> j` by `X_k + X_i`, with out-edges `out(k) + out(i)`. The
/// labels stay linearly independent and each survivor of an edgeless graph is
/// a homology class with its label as a cycle representative.
#[derive(Debug, Clone)]
pub struct ReductionGraph {
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    labels: Vec<Vec<u32>>,
    alive: Vec<bool>,
    live: usize,
    steps: usize,
    track_labels: bool,
}

impl ReductionGraph {
    /// `out[k]` lists the basis elements in the boundary of basis element `k`.
    pub fn new(out: Vec<Vec<u32>>) -> Self {
        let size = out.len();
        let mut inn = vec![Vec::new(); size];
        for (k, targets) in out.iter().enumerate() {
            for &t in targets {
                inn[t as usize].push(k as u32);
            }
        }
        let out: Vec<Vec<u32>> = out
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        for v in &mut inn {
            v.sort_unstable();
            v.dedup();
        }
        ReductionGraph {
            out,
            inn,
            labels: (0..size as u32).map(|k| vec![k]).collect(),
            alive: vec![true; size],
            live: size,
            steps: 0,
            track_labels: true,
        }
    }

    /// Like [`ReductionGraph::new`] but without cycle representatives. Each
    /// survivor is then reported by its own vertex alone, which still carries
    /// the grading of the class it stands for.
    pub fn without_labels(out: Vec<Vec<u32>>) -> Self {
        let mut g = Self::new(out);
        g.track_labels = false;
        g
    }

    pub fn from_complex(piece: &GradedComplex) -> Self {
        Self::new((0..piece.len() as u32).map(|k| piece.boundary(k).to_vec()).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.live
    }

    pub fn edge_count(&self) -> usize {
        self.out
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(o, _)| o.len())
            .sum()
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn label(&self, v: u32) -> &[u32] {
        &self.labels[v as usize]
    }

    fn degree(&self, v: u32) -> usize {
        self.out[v as usize].len() + self.inn[v as usize].len()
    }

    /// Cheapest edge out of `i`, scored by the number of edge updates its
    /// cancellation performs (Markowitz cost), ties broken by degree.
    fn best_edge(&self, i: u32) -> Option<(usize, u32)> {
        let oi = self.out[i as usize].len();
        self.out[i as usize]
            .iter()
            .map(|&j| ((self.inn[j as usize].len() - 1) * (oi - 1) * 64 + self.degree(j).min(63), j))
            .min()
    }

    /// Cancels the edge `i -> j`.
    pub fn cancel(&mut self, i: u32, j: u32) -> Vec<u32> {
        let (iu, ju) = (i as usize, j as usize);
        debug_assert!(self.out[iu].binary_search(&j).is_ok());
        let out_i = self.out[iu].clone();
        let label_i = if self.track_labels { self.labels[iu].clone() } else { Vec::new() };
        let sources: Vec<u32> = self.inn[ju].iter().copied().filter(|&k| k != i).collect();
        for &k in &sources {
            let ku = k as usize;
            let old = std::mem::take(&mut self.out[ku]);
            for &l in &out_i {
                debug_assert_ne!(l, k, "self loop");
                if old.binary_search(&l).is_ok() {
                    remove_sorted(&mut self.inn[l as usize], k);
                } else {
                    insert_sorted(&mut self.inn[l as usize], k);
                }
            }
            self.out[ku] = symmetric_difference(&old, &out_i);
            if self.track_labels {
                self.labels[ku] = symmetric_difference(&self.labels[ku], &label_i);
            }
        }
        for v in [i, j] {
            let vu = v as usize;
            for l in std::mem::take(&mut self.out[vu]) {
                remove_sorted(&mut self.inn[l as usize], v);
            }
            for l in std::mem::take(&mut self.inn[vu]) {
                remove_sorted(&mut self.out[l as usize], v);
            }
            self.alive[vu] = false;
            self.labels[vu].clear();
        }
        self.live -= 2;
        self.steps += 1;
        sources
    }

    /// Cancels edges until none remain, cheapest (by endpoint degree) first.
    pub fn reduce(&mut self) {
        let mut heap: BinaryHeap<Reverse<(usize, u32)>> = (0..self.out.len() as u32)
            .filter_map(|i| self.best_edge(i).map(|(s, _)| Reverse((s, i))))
            .collect();
        while let Some(Reverse((score, i))) = heap.pop() {
            if !self.alive[i as usize] {
                continue;
            }
            let Some((now, j)) = self.best_edge(i) else { continue };
            if now > score {
                heap.push(Reverse((now, i)));
                continue;
            }
            for k in self.cancel(i, j) {
                if let Some((s, _)) = self.best_edge(k) {
                    heap.push(Reverse((s, k)));
                }
            }
        }
        debug_assert_eq!(self.edge_count(), 0);
    }

    /// Labels of the remaining vertices.
    pub fn survivors(&self) -> Vec<Vec<u32>> {
        (0..self.out.len())
            .filter(|&v| self.alive[v])
            .map(|v| self.labels[v].clone())
            .collect()
    }
}

/// A homology class of one graded piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    pub maslov: i32,
    /// Cycle representative, as indices into the piece's basis.
    pub representative: Vec<u32>,
}

/// Homology of a graded piece by graph reduction. Maslov gradings are only
/// computed for the surviving representatives.
pub fn reduce(cx: &GridComplex, piece: &GradedComplex) -> Result<Vec<HomologyClass>, HomologyError> {
    let mut graph = ReductionGraph::from_complex(piece);
    graph.reduce();
    graph
        .survivors()
        .into_iter()
        .map(|rep| {
            let maslov = uniform_grading(piece.alexander(), &rep, |k| piece.maslov_of(cx, k))?;
            Ok(HomologyClass {
                maslov,
                representative: rep,
            })
        })
        .collect()
}

/// The common grading of every member of `rep`.
pub(crate) fn uniform_grading(
    alexander: i32,
    rep: &[u32],
    grading: impl Fn(u32) -> Result<i32, ComplexError>,
) -> Result<i32, HomologyError> {
    let first = grading(rep[0])?;
    for &k in &rep[1..] {
        let g = grading(k)?;
        if g != first {
            return Err(HomologyError::InconsistentMaslov {
                alexander,
                first,
                second: g,
            });
        }
    }
    Ok(first)
}

/// Rank over Z/2 of a matrix given as bit rows of `words` 64-bit words each.
pub fn rank_z2(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let words = rows.first().map_or(0, Vec::len);
    for col in 0..words * 64 {
        let (w, b) = (col / 64, col % 64);
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] >> b & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Bit rows of a sparse 0/1 matrix with `cols` columns.
pub fn bit_rows(sparse_rows: &[Vec<u32>], cols: usize) -> Vec<Vec<u64>> {
    let words = cols.div_ceil(64).max(1);
    sparse_rows
        .iter()
        .map(|row| {
            let mut bits = vec![0u64; words];
            for &c in row {
                bits[c as usize / 64] ^= 1 << (c % 64);
            }
            bits
        })
        .collect()
}

/// `dim H_m = dim C_m - rank d_m - rank d_{m+1}` by dense elimination, per Maslov grading.
pub fn gaussian_homology(cx: &GridComplex, piece: &GradedComplex) -> Result<BTreeMap<i32, u64>, ComplexError> {
    let buckets = piece.buckets(cx)?;
    let mut position = vec![0u32; piece.len()];
    for members in buckets.values() {
        for (p, &k) in members.iter().enumerate() {
            position[k as usize] = p as u32;
        }
    }
    // rank of d restricted to grading m, into grading m - 1
    let rank_from = |m: i32| -> usize {
        let (Some(src), Some(dst)) = (buckets.get(&m), buckets.get(&(m - 1))) else {
            return 0;
        };
        let rows: Vec<Vec<u32>> = src
            .iter()
            .map(|&k| piece.boundary(k).iter().map(|&t| position[t as usize]).collect())
            .collect();
        rank_z2(bit_rows(&rows, dst.len()))
    };
    let mut out = BTreeMap::new();
    for (&m, members) in &buckets {
        let dim = members.len() - rank_from(m) - rank_from(m + 1);
        if dim > 0 {
            out.insert(m, dim as u64);
        }
    }
    Ok(out)
}

/// All graded pieces in a range together with their homology.
#[derive(Debug)]
pub struct HomologyComputation {
    pub cx: GridComplex,
    pub range: AlexanderRange,
    pub pieces: Vec<GradedComplex>,
    pub classes: Vec<Vec<HomologyClass>>,
}

impl HomologyComputation {
    pub fn run(grid: &GridDiagram, range: AlexanderRange) -> Result<Self, HomologyError> {
        let cx = GridComplex::new(grid)?;
        let pieces = build_graded_complexes(&cx, range);
        let classes = pieces
            .par_iter()
            .map(|piece| reduce(&cx, piece))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HomologyComputation {
            cx,
            range,
            pieces,
            classes,
        })
    }

    pub fn grid_size(&self) -> usize {
        self.cx.size()
    }

    pub fn piece_index(&self, alexander: i32) -> Option<usize> {
        self.pieces.iter().position(|p| p.alexander() == alexander)
    }

    pub fn generator_count(&self) -> usize {
        self.pieces.iter().map(GradedComplex::len).sum()
    }

    /// Homology of the associated graded complex, `HFK (x) (1 + q^-1 t^-1)^(n-1)`
    /// restricted to the range.
    pub fn unstripped(&self) -> BigradedPoly {
        let mut p = BigradedPoly::new();
        for (piece, classes) in self.pieces.iter().zip(&self.classes) {
            for c in classes {
                p.add(piece.alexander(), c.maslov, 1);
            }
        }
        p
    }

    /// The knot Floer homology on its full Alexander range.
    pub fn hfk(&self) -> Result<BigradedPoly, HomologyError> {
        let n = self.grid_size();
        Ok(match self.range {
            AlexanderRange::Full => strip_s_factor(&self.unstripped(), n)?,
            AlexanderRange::NonNegative => strip_s_factor_above(&self.unstripped(), n, 0)?.symmetry_complete()?,
            AlexanderRange::AtLeast(floor) => {
                let top = strip_s_factor_above(&self.unstripped(), n, floor)?;
                top.truncate_below(0).symmetry_complete()?
            }
        })
    }
}

/// Union of the homology of every piece in range, before removing the S factor.
pub fn associated_graded_poly(grid: &GridDiagram, range: AlexanderRange) -> Result<BigradedPoly, HomologyError> {
    Ok(HomologyComputation::run(grid, range)?.unstripped())
}

/// Exact division by `(1 + q^-1 t^-1)^(n-1)` of a full-range polynomial.
pub fn strip_s_factor(p: &BigradedPoly, n: usize) -> Result<BigradedPoly, PolyError> {
    p.divide_s_factor(n as u32 - 1)
}

/// Division by `(1 + q^-1 t^-1)^(n-1)` valid in Alexander gradings `>= floor`
/// when `p` is only known there.
pub fn strip_s_factor_above(p: &BigradedPoly, n: usize, floor: i32) -> Result<BigradedPoly, PolyError> {
    p.divide_s_factor_above(n as u32 - 1, floor)
}

pub fn euler_characteristic(p: &BigradedPoly) -> LaurentPoly {
    p.euler_characteristic()
}
