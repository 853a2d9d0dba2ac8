//! Generators of the grid chain complex, their Alexander and Maslov
//! gradings, and the rectangle differential.
//!
//! A generator is a permutation `sigma` (column -> row), identified with the
//! lattice points `(i, sigma[i])` on the torus.

use std::collections::{BTreeMap, HashMap};
use std::hash::{BuildHasherDefault, Hasher};
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::grid::{GridDiagram, WindingTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("Alexander constant a = {eighths}/8 is not an integer")]
    NonIntegralAlexander { eighths: i64 },
    #[error("Maslov grading {quarters}/4 of {sigma:?} is not an integer")]
    NonIntegralMaslov { sigma: Vec<u8>, quarters: i64 },
    #[error("region decomposition of {sigma:?} does not bound its curve")]
    BadRegionDecomposition { sigma: Vec<u8> },
}

/// Which rectangles the differential counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiffMode {
    /// Rectangles free of O's and generator points: the filtered differential on C(D).
    Full,
    /// Additionally free of X's: the differential of the associated graded complex.
    Graded,
}

/// One term of a boundary: `sigma` with the entries in columns `i < j` swapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryTerm {
    pub i: usize,
    pub j: usize,
    /// X's inside the counted rectangle; the Alexander grading drops by this much.
    pub x_count: u32,
}

impl BoundaryTerm {
    pub fn apply(&self, sigma: &[u8]) -> Vec<u8> {
        let mut out = sigma.to_vec();
        out.swap(self.i, self.j);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub sigma: Vec<u8>,
    pub alexander: i32,
}

/// Mixed-radix Lehmer code of a permutation of `0..n`, `n <= 20`.
pub fn perm_key(sigma: &[u8]) -> u64 {
    let n = sigma.len();
    let mut used: u32 = 0;
    let mut key: u64 = 0;
    for (pos, &v) in sigma.iter().enumerate() {
        let smaller_unused = (v as u32) - (used & ((1u32 << v) - 1)).count_ones();
        key = key * (n - pos) as u64 + smaller_unused as u64;
        used |= 1 << v;
    }
    key
}

/// +1 for even permutations, -1 for odd.
pub fn perm_sign(sigma: &[u8]) -> i32 {
    let mut seen = 0u32;
    let mut transpositions = 0;
    for start in 0..sigma.len() {
        if seen & (1 << start) != 0 {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while seen & (1 << k) == 0 {
            seen |= 1 << k;
            k = sigma[k] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Oriented closed lattice curves from `sigma` to `sigma0` and the cell
/// coefficients of the 2-chain they bound (unbounded region pinned to 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionDecomposition {
    pub n: usize,
    /// Each curve as its corner points; the last point connects back to the first.
    pub curves: Vec<Vec<(usize, usize)>>,
    /// `coeffs[c * n + r]` for the cell with lower left corner `(c, r)`.
    pub coeffs: Vec<i32>,
}

impl RegionDecomposition {
    pub fn coeff(&self, c: usize, r: usize) -> i32 {
        self.coeffs[c * self.n + r]
    }

    fn coeff_or_zero(&self, c: isize, r: isize) -> i32 {
        let n = self.n as isize;
        if (0..n).contains(&c) && (0..n).contains(&r) {
            self.coeff(c as usize, r as usize)
        } else {
            0
        }
    }

    /// Sum of coefficients over the (up to four) cells whose closure contains lattice point `p`.
    pub fn corner_sum(&self, (i, j): (usize, usize)) -> i32 {
        let (i, j) = (i as isize, j as isize);
        self.coeff_or_zero(i - 1, j - 1)
            + self.coeff_or_zero(i, j - 1)
            + self.coeff_or_zero(i - 1, j)
            + self.coeff_or_zero(i, j)
    }

    /// Checks edge by edge that the oriented boundary of the 2-chain equals the curves.
    pub fn bounds_curves(&self) -> bool {
        let n = self.n;
        let m = n + 1;
        // net flow along unit edges: horizontal (x,y)->(x+1,y) and vertical (x,y)->(x,y+1)
        let mut horiz = vec![0i32; m * m];
        let mut vert = vec![0i32; m * m];
        for curve in &self.curves {
            for k in 0..curve.len() {
                let (x0, y0) = curve[k];
                let (x1, y1) = curve[(k + 1) % curve.len()];
                if y0 == y1 {
                    let (lo, hi, s) = if x0 < x1 { (x0, x1, 1) } else { (x1, x0, -1) };
                    for x in lo..hi {
                        horiz[x * m + y0] += s;
                    }
                } else if x0 == x1 {
                    let (lo, hi, s) = if y0 < y1 { (y0, y1, 1) } else { (y1, y0, -1) };
                    for y in lo..hi {
                        vert[x0 * m + y] += s;
                    }
                } else {
                    return false;
                }
            }
        }
        for x in 0..=n {
            for y in 0..=n {
                let (xi, yi) = (x as isize, y as isize);
                if x < n {
                    let expect = self.coeff_or_zero(xi, yi) - self.coeff_or_zero(xi, yi - 1);
                    if horiz[x * m + y] != expect {
                        return false;
                    }
                }
                if y < n {
                    let expect = self.coeff_or_zero(xi - 1, yi) - self.coeff_or_zero(xi, yi);
                    if vert[x * m + y] != expect {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A grid with everything the complex needs precomputed.
#[derive(Debug, Clone)]
pub struct GridComplex {
    grid: GridDiagram,
    winding: WindingTable,
    n: usize,
    a: i32,
    x: Vec<u8>,
    o: Vec<u8>,
    /// `neg_w[c * n + r] = -w(c, r)`
    neg_w: Vec<i32>,
}

impl GridComplex {
    pub fn new(grid: &GridDiagram) -> Result<Self, ComplexError> {
        let winding = WindingTable::new(grid);
        let a = winding.a().ok_or(ComplexError::NonIntegralAlexander {
            eighths: winding.a_eighths(),
        })? as i32;
        let n = grid.size();
        let mut neg_w = vec![0; n * n];
        for c in 0..n {
            for r in 0..n {
                neg_w[c * n + r] = -winding.at(c, r);
            }
        }
        Ok(GridComplex {
            grid: grid.clone(),
            winding,
            n,
            a,
            x: grid.x_rows().iter().map(|&r| r as u8).collect(),
            o: grid.o_rows().iter().map(|&r| r as u8).collect(),
            neg_w,
        })
    }

    pub fn grid(&self) -> &GridDiagram {
        &self.grid
    }

    pub fn winding(&self) -> &WindingTable {
        &self.winding
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// The integral Alexander constant `a`.
    pub fn a(&self) -> i32 {
        self.a
    }

    /// The generator whose points are the lower left corners of the O cells.
    pub fn sigma0(&self) -> Vec<u8> {
        self.o.clone()
    }

    /// `A(sigma) = a - sum of w over the points of sigma`.
    pub fn alexander(&self, sigma: &[u8]) -> i32 {
        let n = self.n;
        self.a
            + sigma
                .iter()
                .enumerate()
                .map(|(c, &r)| self.neg_w[c * n + r as usize])
                .sum::<i32>()
    }

    /// Builds the staircase curves from `sigma` to `sigma0` and the 2-chain they bound.
    pub fn region_decomposition(&self, sigma: &[u8]) -> RegionDecomposition {
        let n = self.n;
        let sigma0 = &self.o;
        let mut col_of_sigma0_row = vec![0usize; n];
        for (c, &r) in sigma0.iter().enumerate() {
            col_of_sigma0_row[r as usize] = c;
        }
        let mut on_curve = vec![false; n];
        let mut curves = Vec::new();
        for start in 0..n {
            if sigma[start] == sigma0[start] || on_curve[start] {
                continue;
            }
            let mut curve = vec![(start, sigma[start] as usize)];
            let mut cur = start;
            loop {
                on_curve[cur] = true;
                let row = sigma[cur] as usize;
                let next = col_of_sigma0_row[row];
                // horizontal along the row of sigma[cur] to the sigma0 point there
                curve.push((next, row));
                if next == start {
                    break;
                }
                // vertical up or down the column to the sigma point
                curve.push((next, sigma[next] as usize));
                cur = next;
            }
            curves.push(curve);
        }

        // winding of the curves around each cell centre, by rightward rays
        let mut column_flux = vec![0i32; n * n];
        for curve in &curves {
            for k in 0..curve.len() {
                let (x0, y0) = curve[k];
                let (x1, y1) = curve[(k + 1) % curve.len()];
                if x0 == x1 && y0 != y1 {
                    let (lo, hi, s) = if y0 < y1 { (y0, y1, 1) } else { (y1, y0, -1) };
                    for r in lo..hi {
                        column_flux[x0 * n + r] += s;
                    }
                }
            }
        }
        let mut coeffs = vec![0i32; n * n];
        for r in 0..n {
            let mut acc = 0;
            for c in (0..n).rev() {
                // strands at x = c + 1 lie to the right of the centre of cell c
                if c + 1 < n {
                    acc += column_flux[(c + 1) * n + r];
                }
                coeffs[c * n + r] = acc;
            }
        }
        RegionDecomposition { n, curves, coeffs }
    }

    /// The Maslov grading from the region decomposition of the staircase curves.
    pub fn maslov(&self, sigma: &[u8]) -> Result<i32, ComplexError> {
        let n = self.n;
        let region = self.region_decomposition(sigma);
        let mut quarters: i64 = 4 * (1 - n as i64);
        for c in 0..n {
            quarters += region.corner_sum((c, sigma[c] as usize)) as i64;
            quarters += region.corner_sum((c, self.o[c] as usize)) as i64;
            quarters -= 8 * region.coeff(c, self.o[c] as usize) as i64;
        }
        if quarters % 4 != 0 {
            return Err(ComplexError::NonIntegralMaslov {
                sigma: sigma.to_vec(),
                quarters,
            });
        }
        Ok((quarters / 4) as i32)
    }

    /// Calls `f` for every term of the boundary of `sigma`.
    ///
    /// For each column pair there are two torus rectangles with `sigma` at the
    /// lower left and upper right corners; the swapped generator appears iff
    /// exactly one of them is admissible for `mode`.
    pub fn for_each_boundary(&self, sigma: &[u8], mode: DiffMode, mut f: impl FnMut(BoundaryTerm)) {
        let n = self.n;
        // per unordered pair (lo * n + hi): admissible count and X count of the last one
        let mut hits = [0u8; 256];
        let mut xs = [0u8; 256];
        for i in 0..n {
            let base = sigma[i] as usize;
            let mut min_block = n;
            let mut xmask: u32 = 0;
            for step in 1..n {
                let j = (i + step) % n;
                let prev = (j + n - 1) % n;
                min_block = min_block.min((self.o[prev] as usize + n - base) % n);
                let x_off = (self.x[prev] as usize + n - base) % n;
                match mode {
                    DiffMode::Graded => min_block = min_block.min(x_off),
                    DiffMode::Full => xmask |= 1 << x_off,
                }
                if step > 1 {
                    min_block = min_block.min((sigma[prev] as usize + n - base) % n);
                }
                if min_block == 0 {
                    break;
                }
                let h = (sigma[j] as usize + n - base) % n;
                if h <= min_block {
                    let slot = i.min(j) * n + i.max(j);
                    hits[slot] += 1;
                    xs[slot] = (xmask & ((1u32 << h) - 1)).count_ones() as u8;
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let slot = i * n + j;
                if hits[slot] == 1 {
                    f(BoundaryTerm {
                        i,
                        j,
                        x_count: xs[slot] as u32,
                    });
                }
            }
        }
    }

    pub fn boundary(&self, sigma: &[u8], mode: DiffMode) -> Vec<BoundaryTerm> {
        let mut out = Vec::new();
        self.for_each_boundary(sigma, mode, |t| out.push(t));
        out
    }

    /// Every generator with `A >= min_alexander` (all `n!` if `None`), in
    /// lexicographic order of `sigma`.
    pub fn enumerate(&self, min_alexander: Option<i32>) -> Vec<Generator> {
        let flat = self.enumerate_flat(min_alexander);
        flat.into_iter()
            .map(|(sigma, alexander)| Generator { sigma, alexander })
            .collect()
    }

    pub(crate) fn enumerate_flat(&self, min_alexander: Option<i32>) -> Vec<(Vec<u8>, i32)> {
        let n = self.n;
        let need = min_alexander.map(|m| m - self.a);
        // per column, rows sorted by -w descending, and the best value over all rows
        let order: Vec<Vec<u8>> = (0..n)
            .map(|c| {
                let mut rows: Vec<u8> = (0..n as u8).collect();
                rows.sort_by_key(|&r| std::cmp::Reverse(self.neg_w[c * n + r as usize]));
                rows
            })
            .collect();
        let mut suffix_best = vec![0i32; n + 1];
        for c in (0..n).rev() {
            suffix_best[c] = suffix_best[c + 1] + self.neg_w[c * n + order[c][0] as usize];
        }
        let search = Search {
            cx: self,
            need,
            order: &order,
            suffix_best: &suffix_best,
        };
        let prefixes: Vec<(u8, u8)> = (0..n as u8)
            .flat_map(|r0| (0..n as u8).filter(move |&r1| r1 != r0).map(move |r1| (r0, r1)))
            .collect();
        prefixes
            .into_par_iter()
            .map(|(r0, r1)| {
                let mut out = Vec::new();
                let mut sigma = vec![0u8; n];
                sigma[0] = r0;
                sigma[1] = r1;
                let used = (1u32 << r0) | (1u32 << r1);
                let partial = self.neg_w[r0 as usize] + self.neg_w[n + r1 as usize];
                if search.feasible(2, used, partial) {
                    search.descend(2, used, partial, &mut sigma, &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }
}

struct Search<'a> {
    cx: &'a GridComplex,
    need: Option<i32>,
    order: &'a [Vec<u8>],
    suffix_best: &'a [i32],
}

impl Search<'_> {
    /// Optimistic bound on the remaining columns using only unused rows.
    fn feasible(&self, col: usize, used: u32, partial: i32) -> bool {
        let Some(need) = self.need else { return true };
        if partial + self.suffix_best[col] < need {
            return false;
        }
        let n = self.cx.n;
        let mut bound = partial;
        for c in col..n {
            let r = self.order[c]
                .iter()
                .find(|&&r| used & (1 << r) == 0)
                .expect("an unused row remains");
            bound += self.cx.neg_w[c * n + *r as usize];
        }
        bound >= need
    }

    fn descend(&self, col: usize, used: u32, partial: i32, sigma: &mut [u8], out: &mut Vec<(Vec<u8>, i32)>) {
        let n = self.cx.n;
        if col == n {
            out.push((sigma.to_vec(), self.cx.a + partial));
            return;
        }
        for r in 0..n as u8 {
            if used & (1 << r) != 0 {
                continue;
            }
            let next_partial = partial + self.cx.neg_w[col * n + r as usize];
            let next_used = used | (1 << r);
            if !self.feasible(col + 1, next_used, next_partial) {
                continue;
            }
            sigma[col] = r;
            self.descend(col + 1, next_used, next_partial, sigma, out);
        }
    }
}

#[derive(Default)]
pub(crate) struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u64(&mut self, v: u64) {
        self.0 = (self.0.rotate_left(5) ^ v).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
}

pub(crate) type KeyMap<V> = HashMap<u64, V, BuildHasherDefault<KeyHasher>>;

/// The part of the associated graded complex in one Alexander grading.
#[derive(Debug)]
pub struct GradedComplex {
    alexander: i32,
    n: usize,
    perms: Vec<u8>,
    index: KeyMap<u32>,
    diff: Vec<Vec<u32>>,
    maslov: OnceLock<Vec<i32>>,
}

impl GradedComplex {
    /// Builds the piece from its generators, computing the graded differential.
    pub fn build(cx: &GridComplex, alexander: i32, sigmas: Vec<Vec<u8>>) -> Self {
        let n = cx.size();
        let mut perms = Vec::with_capacity(sigmas.len() * n);
        let mut index = KeyMap::default();
        index.reserve(sigmas.len());
        for (k, s) in sigmas.iter().enumerate() {
            perms.extend_from_slice(s);
            index.insert(perm_key(s), k as u32);
        }
        let diff: Vec<Vec<u32>> = (0..sigmas.len())
            .into_par_iter()
            .map(|k| {
                let sigma = &perms[k * n..(k + 1) * n];
                let mut targets = Vec::new();
                let mut swapped = sigma.to_vec();
                cx.for_each_boundary(sigma, DiffMode::Graded, |t| {
                    swapped.swap(t.i, t.j);
                    if let Some(&idx) = index.get(&perm_key(&swapped)) {
                        targets.push(idx);
                    }
                    swapped.swap(t.i, t.j);
                });
                targets.sort_unstable();
                targets
            })
            .collect();
        let piece = GradedComplex {
            alexander,
            n,
            perms,
            index,
            diff,
            maslov: OnceLock::new(),
        };
        debug_assert!(piece.d_squared_is_zero());
        piece
    }

    /// A complex given directly by its differential, for tests and augmentation.
    pub fn from_parts(alexander: i32, n: usize, sigmas: Vec<Vec<u8>>, diff: Vec<Vec<u32>>, maslov: Vec<i32>) -> Self {
        let mut perms = Vec::new();
        let mut index = KeyMap::default();
        for (k, s) in sigmas.iter().enumerate() {
            perms.extend_from_slice(s);
            index.insert(perm_key(s), k as u32);
        }
        let cell = OnceLock::new();
        let _ = cell.set(maslov);
        GradedComplex {
            alexander,
            n,
            perms,
            index,
            diff,
            maslov: cell,
        }
    }

    pub fn alexander(&self) -> i32 {
        self.alexander
    }

    pub fn len(&self) -> usize {
        self.diff.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diff.is_empty()
    }

    pub fn grid_size(&self) -> usize {
        self.n
    }

    pub fn sigma(&self, k: u32) -> &[u8] {
        let k = k as usize;
        &self.perms[k * self.n..(k + 1) * self.n]
    }

    pub fn index_of(&self, sigma: &[u8]) -> Option<u32> {
        self.index.get(&perm_key(sigma)).copied()
    }

    /// Indices of the boundary of basis element `k` within this piece.
    pub fn boundary(&self, k: u32) -> &[u32] {
        &self.diff[k as usize]
    }

    pub fn edge_count(&self) -> usize {
        self.diff.iter().map(Vec::len).sum()
    }

    /// Maslov gradings of all basis elements, computed on first use.
    pub fn maslov_all(&self, cx: &GridComplex) -> Result<&[i32], ComplexError> {
        if let Some(m) = self.maslov.get() {
            return Ok(m);
        }
        let computed: Result<Vec<i32>, ComplexError> = (0..self.len() as u32)
            .into_par_iter()
            .map(|k| cx.maslov(self.sigma(k)))
            .collect();
        let computed = computed?;
        Ok(self.maslov.get_or_init(|| computed))
    }

    /// Maslov grading of a single basis element, using the cache if filled.
    pub fn maslov_of(&self, cx: &GridComplex, k: u32) -> Result<i32, ComplexError> {
        match self.maslov.get() {
            Some(m) => Ok(m[k as usize]),
            None => cx.maslov(self.sigma(k)),
        }
    }

    /// Basis indices bucketed by Maslov grading.
    pub fn buckets(&self, cx: &GridComplex) -> Result<BTreeMap<i32, Vec<u32>>, ComplexError> {
        let m = self.maslov_all(cx)?;
        let mut out: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
        for (k, &g) in m.iter().enumerate() {
            out.entry(g).or_default().push(k as u32);
        }
        Ok(out)
    }

    /// `d o d = 0` over Z/2.
    pub fn d_squared_is_zero(&self) -> bool {
        let mut counts: KeyMap<u32> = KeyMap::default();
        for k in 0..self.len() {
            counts.clear();
            for &t in &self.diff[k] {
                for &u in &self.diff[t as usize] {
                    *counts.entry(u as u64).or_default() += 1;
                }
            }
            if counts.values().any(|c| c % 2 == 1) {
                return false;
            }
        }
        true
    }
}

/// Which Alexander gradings to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlexanderRange {
    /// Gradings `>= 0`; the rest follows by symmetry.
    NonNegative,
    /// Every grading.
    Full,
    /// Gradings `>= min`.
    AtLeast(i32),
}

impl AlexanderRange {
    pub fn min(self) -> Option<i32> {
        match self {
            AlexanderRange::NonNegative => Some(0),
            AlexanderRange::Full => None,
            AlexanderRange::AtLeast(m) => Some(m),
        }
    }
}

/// One [`GradedComplex`] per Alexander grading in range, ascending.
pub fn build_graded_complexes(cx: &GridComplex, range: AlexanderRange) -> Vec<GradedComplex> {
    let mut by_grading: BTreeMap<i32, Vec<Vec<u8>>> = BTreeMap::new();
    for (sigma, a) in cx.enumerate_flat(range.min()) {
        by_grading.entry(a).or_default().push(sigma);
    }
    by_grading
        .into_iter()
        .map(|(a, sigmas)| GradedComplex::build(cx, a, sigmas))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_indexed(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'1').collect()
    }

    fn all_perms(n: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut p: Vec<u8> = (0..n as u8).collect();
        fn rec(k: usize, p: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if k == p.len() {
                out.push(p.clone());
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                rec(k + 1, p, out);
                p.swap(k, i);
            }
        }
        rec(0, &mut p, &mut out);
        out
    }

    #[test]
    fn lehmer_keys_are_a_bijection() {
        let mut keys: Vec<u64> = all_perms(5).iter().map(|p| perm_key(p)).collect();
        keys.sort_unstable();
        assert_eq!(keys, (0..120).collect::<Vec<_>>());
        assert_eq!(perm_key(&one_indexed("12345")), 0);
        assert_eq!(perm_key(&one_indexed("54321")), 119);
    }

    #[test]
    fn signs() {
        assert_eq!(perm_sign(&[0, 1, 2]), 1);
        assert_eq!(perm_sign(&[1, 0, 2]), -1);
        assert_eq!(perm_sign(&[1, 2, 0]), 1);
    }

    #[test]
    fn unknot_gradings() {
        let g = GridDiagram::new(vec![0, 1], vec![1, 0]).unwrap();
        let cx = GridComplex::new(&g).unwrap();
        assert_eq!(cx.a(), -1);
        assert_eq!(cx.sigma0(), vec![1, 0]);
        assert_eq!(cx.alexander(&[0, 1]), 0);
        assert_eq!(cx.alexander(&[1, 0]), -1);
        assert_eq!(cx.maslov(&[1, 0]).unwrap(), -1);
        assert_eq!(cx.maslov(&[0, 1]).unwrap(), 0);
        for mode in [DiffMode::Full, DiffMode::Graded] {
            assert!(cx.boundary(&[0, 1], mode).is_empty());
            assert!(cx.boundary(&[1, 0], mode).is_empty());
        }
    }

    #[test]
    fn sigma0_has_empty_curve() {
        let cx = GridComplex::new(&GridDiagram::torus(3, 4).unwrap()).unwrap();
        let s0 = cx.sigma0();
        let region = cx.region_decomposition(&s0);
        assert!(region.curves.is_empty());
        assert!(region.coeffs.iter().all(|&c| c == 0));
        assert_eq!(cx.maslov(&s0).unwrap(), 1 - 7);
    }

    #[test]
    fn region_decomposition_bounds_curves() {
        let cx = GridComplex::new(&GridDiagram::torus(2, 3).unwrap()).unwrap();
        for p in all_perms(5) {
            let region = cx.region_decomposition(&p);
            assert!(region.bounds_curves(), "{p:?}");
        }
    }

    #[test]
    fn maslov_parity_tracks_sign() {
        let cx = GridComplex::new(&GridDiagram::torus(2, 3).unwrap()).unwrap();
        let s0 = cx.sigma0();
        let m0 = cx.maslov(&s0).unwrap();
        for p in all_perms(5) {
            let m = cx.maslov(&p).unwrap();
            let same_parity = (m - m0).rem_euclid(2) == 0;
            assert_eq!(same_parity, perm_sign(&p) == perm_sign(&s0), "{p:?}");
        }
    }

    #[test]
    fn enumeration_matches_filtering() {
        let cx = GridComplex::new(&GridDiagram::torus(2, 3).unwrap()).unwrap();
        let all = cx.enumerate(None);
        assert_eq!(all.len(), 120);
        for min in -3..=2 {
            let pruned = cx.enumerate(Some(min));
            let filtered: Vec<_> = all.iter().filter(|g| g.alexander >= min).cloned().collect();
            assert_eq!(pruned, filtered, "min = {min}");
        }
        for g in &all {
            assert_eq!(g.alexander, cx.alexander(&g.sigma));
        }
    }

    #[test]
    fn boundary_swaps_and_grading_shifts() {
        let cx = GridComplex::new(&GridDiagram::torus(2, 3).unwrap()).unwrap();
        for p in all_perms(5) {
            let a = cx.alexander(&p);
            let m = cx.maslov(&p).unwrap();
            for t in cx.boundary(&p, DiffMode::Full) {
                let q = t.apply(&p);
                assert_eq!(cx.alexander(&q), a - t.x_count as i32);
                assert_eq!(cx.maslov(&q).unwrap(), m - 1);
            }
            for t in cx.boundary(&p, DiffMode::Graded) {
                assert_eq!(t.x_count, 0);
                assert_eq!(cx.alexander(&t.apply(&p)), a);
            }
        }
    }

    #[test]
    fn graded_pieces_partition_generators() {
        let cx = GridComplex::new(&GridDiagram::torus(2, 3).unwrap()).unwrap();
        let pieces = build_graded_complexes(&cx, AlexanderRange::Full);
        assert_eq!(pieces.iter().map(GradedComplex::len).sum::<usize>(), 120);
        for piece in &pieces {
            assert!(piece.d_squared_is_zero());
            for k in 0..piece.len() as u32 {
                assert_eq!(piece.index_of(piece.sigma(k)), Some(k));
            }
        }
    }
}
