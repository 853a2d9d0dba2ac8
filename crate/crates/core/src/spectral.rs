//! The first differential of the knot filtration spectral sequence, the E2
//! page, and the tau invariant.
//!
//! `d1: E1(a, m) -> E1(a - 1, m - 1)` is the connecting map of
//! `0 -> C^{a-1}/C^{a-2} -> C^a/C^{a-2} -> C^a/C^{a-1} -> 0`. Its rank is found
//! by pushing homology representatives of the source one filtration level
//! down and counting how many classes of the target they kill, which is done
//! by adjoining a formal generator `g` with `dg = z` for every pushed cycle
//! `z` and recomputing the target homology.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{AlexanderRange, ComplexError, DiffMode, GradedComplex};
use crate::homology::{
    bit_rows, rank_z2, strip_s_factor, strip_s_factor_above, symmetric_difference, uniform_grading,
    HomologyComputation, HomologyError, ReductionGraph,
};
use crate::poly::{BigradedPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("boundary of a class at (a = {alexander}, m = {maslov}) leaves the computed range")]
    MissingPiece { alexander: i32, maslov: i32 },
    #[error("pushed-down boundary of a class at (a = {alexander}, m = {maslov}) is not a cycle")]
    NotACycle { alexander: i32, maslov: i32 },
    #[error("E2 has negative dimension at (a = {alexander}, m = {maslov})")]
    NegativeE2 { alexander: i32, maslov: i32 },
    #[error("the surviving class sits in Maslov grading {maslov}, not 0")]
    SurvivorOffDiagonal { maslov: i32 },
    #[error("E2 of the grid complex is not E2 of the knot times the S factor: {0}")]
    PageMismatch(String),
}

impl From<ComplexError> for SpectralError {
    fn from(e: ComplexError) -> Self {
        SpectralError::Homology(e.into())
    }
}

/// E1, the ranks of d1 keyed by source bidegree, and E2, all with the S factor removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPages {
    pub e1: BigradedPoly,
    pub d1_ranks: BigradedPoly,
    pub e2: BigradedPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TauResult {
    Value(i32),
    Indeterminate(String),
}

impl TauResult {
    pub fn value(&self) -> Option<i32> {
        match self {
            TauResult::Value(v) => Some(*v),
            TauResult::Indeterminate(_) => None,
        }
    }
}

impl fmt::Display for TauResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauResult::Value(v) => write!(f, "{v}"),
            TauResult::Indeterminate(reason) => write!(f, "indeterminate ({reason})"),
        }
    }
}

/// The cycles `z_1..z_k` in the piece one grading down, one per class at `(a, m)`.
pub fn pushed_cycles(comp: &HomologyComputation, alexander: i32, maslov: i32) -> Result<Vec<Vec<u32>>, SpectralError> {
    Ok(pushed_cycles_by_grading(comp, alexander, Some(maslov))?
        .into_iter()
        .map(|(_, z)| z)
        .collect())
}

/// Pushed cycles of every class in the piece at `alexander` (or only those in
/// one Maslov grading), tagged with the grading of the class.
fn pushed_cycles_by_grading(
    comp: &HomologyComputation,
    alexander: i32,
    only: Option<i32>,
) -> Result<Vec<(i32, Vec<u32>)>, SpectralError> {
    let Some(src) = comp.piece_index(alexander) else { return Ok(Vec::new()) };
    let classes = comp.classes[src].iter().filter(|c| only.is_none_or(|m| c.maslov == m));
    let Some(target) = comp.piece_index(alexander - 1) else {
        return match classes.clone().next() {
            Some(c) => Err(SpectralError::MissingPiece { alexander, maslov: c.maslov }),
            None => Ok(Vec::new()),
        };
    };
    let (source, below) = (&comp.pieces[src], &comp.pieces[target]);
    let cx = &comp.cx;
    let mut cycles = Vec::new();
    for class in classes {
        let maslov = class.maslov;
        let mut counts: BTreeMap<u32, u8> = BTreeMap::new();
        let mut failed = false;
        for &k in &class.representative {
            let sigma = source.sigma(k);
            let mut swapped = sigma.to_vec();
            cx.for_each_boundary(sigma, DiffMode::Full, |t| {
                if t.x_count != 1 {
                    return;
                }
                swapped.swap(t.i, t.j);
                match below.index_of(&swapped) {
                    Some(idx) => *counts.entry(idx).or_default() ^= 1,
                    None => failed = true,
                }
                swapped.swap(t.i, t.j);
            });
        }
        if failed {
            return Err(SpectralError::MissingPiece { alexander, maslov });
        }
        let z: Vec<u32> = counts.into_iter().filter(|&(_, c)| c == 1).map(|(k, _)| k).collect();
        if !is_cycle(below, &z) {
            return Err(SpectralError::NotACycle { alexander, maslov });
        }
        cycles.push((maslov, z));
    }
    Ok(cycles)
}

fn is_cycle(piece: &GradedComplex, chain: &[u32]) -> bool {
    let mut acc: Vec<u32> = Vec::new();
    for &k in chain {
        acc = symmetric_difference(&acc, piece.boundary(k));
    }
    acc.is_empty()
}

/// Rank of d1 out of `(a, m)` on the grid complex (S factor included), by
/// augmenting the piece at `a - 1` and measuring the drop of `H_{m-1}`.
pub fn d1_rank_unstripped(comp: &HomologyComputation, alexander: i32, maslov: i32) -> Result<usize, SpectralError> {
    let cycles = pushed_cycles_by_grading(comp, alexander, Some(maslov))?;
    Ok(augmented_rank_drops(comp, alexander, cycles)?.get(&maslov).copied().unwrap_or(0))
}

/// Ranks of d1 out of every Maslov grading of the piece at `a`. The
/// augmented complex stays Maslov graded, so one reduction serves all
/// gradings at once.
pub fn d1_ranks_out_of(comp: &HomologyComputation, alexander: i32) -> Result<BTreeMap<i32, usize>, SpectralError> {
    let cycles = pushed_cycles_by_grading(comp, alexander, None)?;
    augmented_rank_drops(comp, alexander, cycles)
}

fn augmented_rank_drops(
    comp: &HomologyComputation,
    alexander: i32,
    cycles: Vec<(i32, Vec<u32>)>,
) -> Result<BTreeMap<i32, usize>, SpectralError> {
    let cycles: Vec<(i32, Vec<u32>)> = cycles.into_iter().filter(|(_, z)| !z.is_empty()).collect();
    if cycles.is_empty() {
        return Ok(BTreeMap::new());
    }
    let target = comp.piece_index(alexander - 1).expect("checked when pushing cycles");
    let piece = &comp.pieces[target];
    let mut before: BTreeMap<i32, usize> = BTreeMap::new();
    for c in &comp.classes[target] {
        *before.entry(c.maslov + 1).or_default() += 1;
    }
    let base = piece.len() as u32;
    let added: Vec<i32> = cycles.iter().map(|(m, _)| *m).collect();
    let mut out: Vec<Vec<u32>> = (0..base).map(|k| piece.boundary(k).to_vec()).collect();
    out.extend(cycles.into_iter().map(|(_, z)| z));
    let mut graph = ReductionGraph::without_labels(out);
    graph.reduce();
    let cx = &comp.cx;
    let mut after: BTreeMap<i32, usize> = BTreeMap::new();
    for rep in graph.survivors() {
        let grading = uniform_grading(alexander - 1, &rep, |k| {
            if k >= base {
                Ok(added[(k - base) as usize])
            } else {
                piece.maslov_of(cx, k)
            }
        })?;
        *after.entry(grading + 1).or_default() += 1;
    }
    // H_{m-1} of the augmented complex is H_{m-1} modulo the cycles pushed
    // out of grading m, plus the kernel of the generators added in grading
    // m - 1 themselves, so work upwards through the gradings.
    let mut count: BTreeMap<i32, usize> = BTreeMap::new();
    for &m in &added {
        *count.entry(m).or_default() += 1;
    }
    let mut drops = BTreeMap::new();
    let mut kernel_below = 0;
    let mut previous = None;
    for (&m, &added_here) in &count {
        if previous != Some(m - 1) {
            kernel_below = 0;
        }
        let drop = before.get(&m).copied().unwrap_or(0) + kernel_below - after.get(&m).copied().unwrap_or(0);
        if drop > 0 {
            drops.insert(m, drop);
        }
        kernel_below = added_here - drop;
        previous = Some(m);
    }
    Ok(drops)
}

/// The same rank by dense elimination: `rank [B; Z] - rank B` where `B`
/// spans the boundaries in the target grading.
pub fn d1_rank_dense(comp: &HomologyComputation, alexander: i32, maslov: i32) -> Result<usize, SpectralError> {
    let cycles = pushed_cycles(comp, alexander, maslov)?;
    let Some(target) = comp.piece_index(alexander - 1) else { return Ok(0) };
    let piece = &comp.pieces[target];
    let buckets = piece.buckets(&comp.cx)?;
    let Some(dst) = buckets.get(&(maslov - 1)) else { return Ok(0) };
    let position: BTreeMap<u32, u32> = dst.iter().enumerate().map(|(p, &k)| (k, p as u32)).collect();
    let boundaries: Vec<Vec<u32>> = buckets
        .get(&maslov)
        .map(|src| {
            src.iter()
                .map(|&k| piece.boundary(k).iter().map(|t| position[t]).collect())
                .collect()
        })
        .unwrap_or_default();
    let zs: Vec<Vec<u32>> = cycles
        .iter()
        .map(|z| z.iter().map(|t| position[t]).collect())
        .collect();
    let rank_b = rank_z2(bit_rows(&boundaries, dst.len()));
    let mut both = boundaries;
    both.extend(zs);
    Ok(rank_z2(bit_rows(&both, dst.len())) - rank_b)
}

/// Every unstripped d1 rank computable in the range, keyed by source bidegree.
pub fn d1_unstripped_ranks(comp: &HomologyComputation) -> Result<BigradedPoly, SpectralError> {
    let sources: Vec<i32> = comp
        .pieces
        .iter()
        .map(GradedComplex::alexander)
        .filter(|&a| comp.piece_index(a - 1).is_some())
        .collect();
    let ranks = sources
        .par_iter()
        .map(|&a| d1_ranks_out_of(comp, a).map(|r| (a, r)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BigradedPoly::from_terms(
        ranks
            .into_iter()
            .flat_map(|(a, r)| r.into_iter().map(move |(m, rank)| (a, m, rank as u64))),
    ))
}

/// Moves d1 ranks of the mirror knot over to the knot itself. The mirror's
/// complex is dual to the knot's, so `rank d1(a, m) = rank d1_mirror(1 - a, 1 - m)`.
pub fn ranks_from_mirror(mirror_ranks: &BigradedPoly) -> BigradedPoly {
    mirror_ranks.map_gradings(|a, m| (1 - a, 1 - m))
}

/// Stripped d1 ranks for all sources with `a >= 1`, from a computation whose
/// range starts at or below 0.
fn stripped_upper_ranks(comp: &HomologyComputation) -> Result<(BigradedPoly, BigradedPoly), SpectralError> {
    let n = comp.grid_size();
    let unstripped = d1_unstripped_ranks(comp)?;
    let stripped = match comp.range.min() {
        None => strip_s_factor(&unstripped, n)?,
        Some(floor) => strip_s_factor_above(&unstripped, n, floor + 1)?,
    };
    Ok((unstripped, stripped))
}

/// `E2(a, m) = E1(a, m) - rank d1 out of (a, m) - rank d1 into (a, m)`.
pub fn e2_from_ranks(e1: &BigradedPoly, ranks: &BigradedPoly) -> Result<BigradedPoly, SpectralError> {
    let mut e2 = BigradedPoly::new();
    for t in e1.terms() {
        let out = ranks.get(t.a, t.m);
        let into = ranks.get(t.a + 1, t.m + 1);
        let dim = t.dim.checked_sub(out + into).ok_or(SpectralError::NegativeE2 {
            alexander: t.a,
            maslov: t.m,
        })?;
        e2.add(t.a, t.m, dim);
    }
    Ok(e2)
}

/// E1, d1 and E2 with the S factor removed.
///
/// On a partial Alexander range only the d1 maps out of `a >= 1` are visible.
/// The rest are read off the mirror grid, computed over the same range.
pub fn e2_page(comp: &HomologyComputation) -> Result<SpectralPages, SpectralError> {
    let n = comp.grid_size();
    let e1 = comp.hfk()?;
    let (unstripped_ranks, upper) = stripped_upper_ranks(comp)?;
    let d1_ranks = match comp.range {
        AlexanderRange::Full => upper,
        range => {
            if range.min().is_some_and(|f| f > 0) {
                return Err(SpectralError::MissingPiece { alexander: 0, maslov: 0 });
            }
            let mirror = HomologyComputation::run(&comp.cx.grid().mirror(), range)?;
            let (_, mirror_upper) = stripped_upper_ranks(&mirror)?;
            let mut ranks = upper.truncate_below(1);
            for t in ranks_from_mirror(&mirror_upper.truncate_below(1)).terms() {
                ranks.set(t.a, t.m, t.dim);
            }
            ranks
        }
    };
    let e2 = e2_from_ranks(&e1, &d1_ranks)?;

    // the grid complex's own E2 must be the knot's E2 times the S factor
    let unstripped_e1 = comp.unstripped();
    let (grid_e2, stripped, expected) = match comp.range.min() {
        None => {
            let grid_e2 = e2_from_ranks(&unstripped_e1, &unstripped_ranks)?;
            let stripped = strip_s_factor(&grid_e2, n)?;
            (grid_e2, stripped, e2.clone())
        }
        Some(floor) => {
            let floor = floor + 1;
            let grid_e2 = e2_from_ranks(&unstripped_e1.truncate_below(floor), &unstripped_ranks)?;
            let stripped = strip_s_factor_above(&grid_e2, n, floor)?;
            (grid_e2, stripped, e2.truncate_below(floor))
        }
    };
    if stripped != expected {
        return Err(SpectralError::PageMismatch(format!("{grid_e2} strips to {stripped}, expected {expected}")));
    }
    Ok(SpectralPages { e1, d1_ranks, e2 })
}

impl SpectralPages {
    /// tau, when the E2 page forces it.
    ///
    /// The sequence converges to a single class in Maslov grading 0, and the
    /// higher differentials preserve nothing else. If E2 is one-dimensional
    /// that class is the survivor; if E2 has exactly one class in Maslov
    /// grading 0 it must be the survivor. Otherwise tau is left undetermined.
    pub fn tau(&self) -> Result<TauResult, SpectralError> {
        if self.e2.total_dim() == 1 {
            let t = self.e2.terms().next().expect("one term");
            if t.m != 0 {
                return Err(SpectralError::SurvivorOffDiagonal { maslov: t.m });
            }
            return Ok(TauResult::Value(t.a));
        }
        let at_zero: Vec<_> = self.e2.terms().filter(|t| t.m == 0).collect();
        match at_zero[..] {
            [t] if t.dim == 1 => Ok(TauResult::Value(t.a)),
            [] => Err(SpectralError::SurvivorOffDiagonal {
                maslov: self.e2.terms().next().map_or(0, |t| t.m),
            }),
            _ => Ok(TauResult::Indeterminate("higher differentials not forced".into())),
        }
    }
}

/// Convenience wrapper: compute everything for a grid and read off tau.
pub fn tau(grid: &crate::grid::GridDiagram, range: AlexanderRange) -> Result<TauResult, SpectralError> {
    let comp = HomologyComputation::run(grid, range)?;
    e2_page(&comp)?.tau()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridDiagram;

    #[test]
    fn unknot_pages() {
        let grid = GridDiagram::new(vec![0, 1], vec![1, 0]).unwrap();
        for range in [AlexanderRange::Full, AlexanderRange::NonNegative] {
            let comp = HomologyComputation::run(&grid, range).unwrap();
            let pages = e2_page(&comp).unwrap();
            assert_eq!(pages.e2, BigradedPoly::one());
            assert!(pages.d1_ranks.is_empty());
            assert_eq!(pages.tau().unwrap(), TauResult::Value(0));
        }
    }

    #[test]
    fn mirror_ranks_reflect_through_half_integers() {
        let mirror = BigradedPoly::from_terms([(1, 1, 1), (3, 6, 2)]);
        let own = ranks_from_mirror(&mirror);
        assert_eq!(own.get(0, 0), 1);
        assert_eq!(own.get(-2, -5), 2);
        assert_eq!(ranks_from_mirror(&own), mirror);
    }

    #[test]
    fn tau_rules() {
        let pages = |e2: &str| SpectralPages {
            e1: BigradedPoly::new(),
            d1_ranks: BigradedPoly::new(),
            e2: e2.parse().unwrap(),
        };
        assert_eq!(pages("t^3").tau().unwrap(), TauResult::Value(3));
        assert_eq!(pages("q^{-2}+q^{-1}t^2+t^3").tau().unwrap(), TauResult::Value(3));
        assert!(matches!(pages("t^2+t^3").tau().unwrap(), TauResult::Indeterminate(_)));
        assert!(matches!(pages("qt").tau(), Err(SpectralError::SurvivorOffDiagonal { maslov: 1 })));
    }
}
