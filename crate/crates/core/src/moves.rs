//! Grid moves: cyclic translation, commutation, stabilization and
//! destabilization, plus a randomized simplifier built from them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{GridDiagram, Mark, MAX_GRID_SIZE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("index {index} is out of range for a grid of size {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("columns {0} and {1} cannot be commuted: their segments interleave")]
    ColumnsInterleave(usize, usize),
    #[error("rows {0} and {1} cannot be commuted: their segments interleave")]
    RowsInterleave(usize, usize),
    #[error("the 2x2 block at column {column}, row {row} is not a destabilization site")]
    NotDestabilizable { column: usize, row: usize },
    #[error("stabilizing would exceed the maximum grid size {MAX_GRID_SIZE}")]
    TooLarge,
    #[error("a 2x2 grid cannot be destabilized")]
    TooSmall,
}

/// The cell of a stabilization's 2x2 block that is left empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    NW,
    NE,
    SW,
    SE,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::NW, Corner::NE, Corner::SW, Corner::SE];

    /// Offsets `(dc, dr)` of the empty cell within the block.
    fn offsets(self) -> (usize, usize) {
        match self {
            Corner::SW => (0, 0),
            Corner::SE => (1, 0),
            Corner::NW => (0, 1),
            Corner::NE => (1, 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// Move every column one step right, the last wrapping to the front.
    TranslateX,
    /// Move every row one step up, the top wrapping to the bottom.
    TranslateY,
    /// Swap columns `c` and `c + 1 (mod n)`.
    CommuteColumns(usize),
    /// Swap rows `r` and `r + 1 (mod n)`.
    CommuteRows(usize),
    /// Replace the mark of kind `mark` in `column` by a 2x2 block with the
    /// `corner` cell empty.
    Stabilize {
        #[serde(with = "mark_serde")]
        mark: Mark,
        column: usize,
        corner: Corner,
    },
    /// Collapse the 2x2 block with lower-left cell `(column, row)`.
    Destabilize { column: usize, row: usize },
}

mod mark_serde {
    use super::Mark;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Mark, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&m.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Mark, D::Error> {
        match String::deserialize(d)?.as_str() {
            "X" => Ok(Mark::X),
            "O" => Ok(Mark::O),
            other => Err(serde::de::Error::custom(format!("unknown mark {other:?}"))),
        }
    }
}

/// Two segments given by their endpoints may be commuted when they are
/// disjoint or one strictly contains the other.
fn non_interleaved((a1, b1): (usize, usize), (a2, b2): (usize, usize)) -> bool {
    let (a1, b1) = (a1.min(b1), a1.max(b1));
    let (a2, b2) = (a2.min(b2), a2.max(b2));
    b1 < a2 || b2 < a1 || (a1 < a2 && b2 < b1) || (a2 < a1 && b1 < b2)
}

fn column_of(rows: &[usize], row: usize) -> usize {
    rows.iter().position(|&r| r == row).expect("rows form a permutation")
}

fn marks(g: &GridDiagram, mark: Mark) -> &[usize] {
    match mark {
        Mark::X => g.x_rows(),
        Mark::O => g.o_rows(),
    }
}

fn other(mark: Mark) -> Mark {
    match mark {
        Mark::X => Mark::O,
        Mark::O => Mark::X,
    }
}

/// Applies a move, checking that it is legal.
pub fn apply_move(g: &GridDiagram, mv: Move) -> Result<GridDiagram, MoveError> {
    let n = g.size();
    let (x, o) = (g.x_rows(), g.o_rows());
    let check = |index: usize| {
        if index < n {
            Ok(())
        } else {
            Err(MoveError::OutOfRange { index, n })
        }
    };
    let out = match mv {
        Move::TranslateX => {
            let rotate = |v: &[usize]| (0..n).map(|c| v[(c + n - 1) % n]).collect::<Vec<_>>();
            GridDiagram::from_parts_unchecked(rotate(x), rotate(o))
        }
        Move::TranslateY => {
            let shift = |v: &[usize]| v.iter().map(|&r| (r + 1) % n).collect::<Vec<_>>();
            GridDiagram::from_parts_unchecked(shift(x), shift(o))
        }
        Move::CommuteColumns(c) => {
            check(c)?;
            let d = (c + 1) % n;
            if !non_interleaved((x[c], o[c]), (x[d], o[d])) {
                return Err(MoveError::ColumnsInterleave(c, d));
            }
            let (mut x, mut o) = (x.to_vec(), o.to_vec());
            x.swap(c, d);
            o.swap(c, d);
            GridDiagram::from_parts_unchecked(x, o)
        }
        Move::CommuteRows(r) => {
            check(r)?;
            let s = (r + 1) % n;
            let span = |row| (column_of(x, row), column_of(o, row));
            if !non_interleaved(span(r), span(s)) {
                return Err(MoveError::RowsInterleave(r, s));
            }
            let swap = |v: &[usize]| {
                v.iter()
                    .map(|&q| if q == r { s } else if q == s { r } else { q })
                    .collect::<Vec<_>>()
            };
            GridDiagram::from_parts_unchecked(swap(x), swap(o))
        }
        Move::Stabilize { mark, column, corner } => {
            check(column)?;
            if n + 1 > MAX_GRID_SIZE {
                return Err(MoveError::TooLarge);
            }
            stabilize(g, mark, column, corner)
        }
        Move::Destabilize { column, row } => {
            if column + 1 >= n || row + 1 >= n {
                return Err(MoveError::OutOfRange {
                    index: column.max(row) + 1,
                    n,
                });
            }
            if n <= 2 {
                return Err(MoveError::TooSmall);
            }
            destabilize(g, column, row).ok_or(MoveError::NotDestabilizable { column, row })?
        }
    };
    debug_assert!(out.validate().is_empty(), "{mv:?} produced an invalid grid");
    Ok(out)
}

fn stabilize(g: &GridDiagram, mark: Mark, c: usize, corner: Corner) -> GridDiagram {
    let n = g.size();
    let same = marks(g, mark);
    let opposite = marks(g, other(mark));
    let r = same[c];
    // the other mark in column c and in row r, which move out to the empty cell's lines
    let column_partner = opposite[c];
    let row_partner = column_of(opposite, r);

    let (dc, dr) = corner.offsets();
    let (ce, re) = (c + dc, r + dr);
    let (cd, rd) = (c + 1 - dc, r + 1 - dr);
    let row_map = |q: usize| if q <= r { q } else { q + 1 };

    let mut new_same = vec![0; n + 1];
    let mut new_opposite = vec![0; n + 1];
    for k in (0..n).filter(|&k| k != c) {
        let nk = if k < c { k } else { k + 1 };
        new_same[nk] = row_map(same[k]);
        new_opposite[nk] = if k == row_partner { re } else { row_map(opposite[k]) };
    }
    new_same[ce] = rd;
    new_opposite[ce] = row_map(column_partner);
    new_same[cd] = re;
    new_opposite[cd] = rd;

    match mark {
        Mark::X => GridDiagram::from_parts_unchecked(new_same, new_opposite),
        Mark::O => GridDiagram::from_parts_unchecked(new_opposite, new_same),
    }
}

/// The block at `(c, r)` collapsed, if exactly three of its cells are marked.
fn destabilize(g: &GridDiagram, c: usize, r: usize) -> Option<GridDiagram> {
    let n = g.size();
    let (x, o) = (g.x_rows(), g.o_rows());
    let cell = |col: usize, row: usize| {
        if x[col] == row {
            Some(Mark::X)
        } else if o[col] == row {
            Some(Mark::O)
        } else {
            None
        }
    };
    let mut empty = None;
    for (dc, dr) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        if cell(c + dc, r + dr).is_none() {
            if empty.is_some() {
                return None;
            }
            empty = Some((dc, dr));
        }
    }
    let (dc, dr) = empty?;
    let (ce, re) = (c + dc, r + dr);
    let (cd, rd) = (c + 1 - dc, r + 1 - dr);
    let mark = cell(ce, rd)?;
    let same = marks(g, mark);
    let opposite = marks(g, other(mark));
    let column_partner = opposite[ce];
    let row_partner = column_of(opposite, re);

    let row_map = |q: usize| if q <= r { q } else { q - 1 };
    let mut new_same = Vec::with_capacity(n - 1);
    let mut new_opposite = Vec::with_capacity(n - 1);
    for k in (0..n).filter(|&k| k != ce) {
        if k == cd {
            new_same.push(r);
            new_opposite.push(row_map(column_partner));
        } else {
            new_same.push(row_map(same[k]));
            new_opposite.push(if k == row_partner { r } else { row_map(opposite[k]) });
        }
    }
    let out = match mark {
        Mark::X => GridDiagram::from_parts_unchecked(new_same, new_opposite),
        Mark::O => GridDiagram::from_parts_unchecked(new_opposite, new_same),
    };
    Some(out)
}

/// Every legal move, in a fixed order: translations, column and row
/// commutations, destabilizations, then stabilizations.
pub fn legal_moves(g: &GridDiagram) -> Vec<Move> {
    let n = g.size();
    let mut moves = vec![Move::TranslateX, Move::TranslateY];
    let candidates = (0..n)
        .map(Move::CommuteColumns)
        .chain((0..n).map(Move::CommuteRows))
        .chain(destabilizations(g));
    moves.extend(candidates.filter(|&mv| apply_move(g, mv).is_ok()));
    if n < MAX_GRID_SIZE {
        for mark in [Mark::X, Mark::O] {
            for column in 0..n {
                for corner in Corner::ALL {
                    moves.push(Move::Stabilize { mark, column, corner });
                }
            }
        }
    }
    moves
}

/// The destabilizations available on `g`.
pub fn destabilizations(g: &GridDiagram) -> Vec<Move> {
    let n = g.size();
    if n <= 2 {
        return Vec::new();
    }
    let mut found = Vec::new();
    for column in 0..n - 1 {
        for row in 0..n - 1 {
            if destabilize(g, column, row).is_some() {
                found.push(Move::Destabilize { column, row });
            }
        }
    }
    found
}

/// Outcome of [`simplify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplification {
    /// The smallest grid met along the walk.
    pub grid: GridDiagram,
    /// Grid size at the start and after every change of size.
    pub sizes: Vec<usize>,
    pub moves_tried: usize,
    pub destabilizations: usize,
    pub stabilizations: usize,
}

/// Random walk through grid moves that takes any destabilization on offer.
///
/// When none is available, a move is drawn uniformly among the translations
/// and legal commutations; with probability 1/16 a random stabilization is
/// made instead, which can open up new destabilizations later. The walk is
/// reproducible from `seed`.
pub fn simplify(g: &GridDiagram, seed: u64, budget: usize) -> Simplification {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = g.clone();
    let mut best = g.clone();
    let (mut destabs, mut stabs) = (0, 0);
    let mut sizes = vec![g.size()];
    let mut tried = 0;
    for _ in 0..budget {
        if current.size() <= 2 {
            break;
        }
        let downs = destabilizations(&current);
        let mv = if let Some(&mv) = downs.choose(&mut rng) {
            destabs += 1;
            mv
        } else if current.size() < MAX_GRID_SIZE && rng.gen_ratio(1, 16) {
            stabs += 1;
            let mark = if rng.gen() { Mark::X } else { Mark::O };
            Move::Stabilize {
                mark,
                column: rng.gen_range(0..current.size()),
                corner: *Corner::ALL.choose(&mut rng).expect("nonempty"),
            }
        } else {
            let sideways: Vec<Move> = legal_moves(&current)
                .into_iter()
                .filter(|mv| !matches!(mv, Move::Stabilize { .. } | Move::Destabilize { .. }))
                .collect();
            *sideways.choose(&mut rng).expect("translations are always legal")
        };
        tried += 1;
        current = apply_move(&current, mv).expect("only legal moves are drawn");
        if current.size() != *sizes.last().expect("nonempty") {
            sizes.push(current.size());
        }
        if current.size() < best.size() {
            best = current.clone();
        }
    }
    Simplification {
        grid: best,
        sizes,
        moves_tried: tried,
        destabilizations: destabs,
        stabilizations: stabs,
    }
}
