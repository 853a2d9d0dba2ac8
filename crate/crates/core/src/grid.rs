//! Grid diagrams (arc presentations) of knots in the 3-sphere.
//!
//! Columns are indexed left to right and rows bottom to top, both from 0.
//! The dot in cell `(c, r)` sits at `(c + 1/2, r + 1/2)`; lattice points are
//! the integer vertices `(i, j)` with `0 <= i, j <= n`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

/// Largest grid accepted. Permutation keys and row masks assume `n <= 16`.
pub const MAX_GRID_SIZE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("grid size {0} is outside the supported range 2..={MAX_GRID_SIZE}")]
    BadSize(usize),
    #[error("{which} row list has {found} entries but n = {expected}")]
    SizeMismatch {
        which: Mark,
        expected: usize,
        found: usize,
    },
    #[error("{which} rows are not a permutation of 0..{n}")]
    NotPermutation { which: Mark, n: usize },
    #[error("X and O share the cell in column {column}")]
    CoincidentMarks { column: usize },
    #[error("diagram has {components} components; only knots are supported")]
    NotAKnot { components: usize },
    #[error("p = {p}, q = {q} do not define a torus knot grid (need p, q >= 1, p + q >= 2, gcd 1)")]
    NotCoprime { p: usize, q: usize },
}

/// Which of the two kinds of marking a statement refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mark {
    X,
    O,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mark::X => f.write_str("X"),
            Mark::O => f.write_str("O"),
        }
    }
}

/// An `n x n` grid with one black (X) and one white (O) dot per row and column.
///
/// `x_rows[c]` is the row of the X in column `c`, `o_rows[c]` the row of the
/// O. The knot runs vertically from X to O in each column and horizontally
/// from O to X in each row, verticals crossing over horizontals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    n: usize,
    x_rows: Vec<usize>,
    o_rows: Vec<usize>,
}

impl GridDiagram {
    /// Builds and validates a grid, returning the first violated invariant.
    pub fn new(x_rows: Vec<usize>, o_rows: Vec<usize>) -> Result<Self, GridError> {
        let n = x_rows.len();
        Self::with_size(n, x_rows, o_rows)
    }

    /// Like [`GridDiagram::new`] but with an explicit size that both row lists must match.
    pub fn with_size(n: usize, x_rows: Vec<usize>, o_rows: Vec<usize>) -> Result<Self, GridError> {
        match validate_parts(n, &x_rows, &o_rows).into_iter().next() {
            Some(err) => Err(err),
            None => Ok(GridDiagram { n, x_rows, o_rows }),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn x_rows(&self) -> &[usize] {
        &self.x_rows
    }

    pub fn o_rows(&self) -> &[usize] {
        &self.o_rows
    }

    /// Column of the X in row `r`.
    pub fn x_column(&self, r: usize) -> usize {
        self.x_rows.iter().position(|&row| row == r).expect("valid grid")
    }

    /// Column of the O in row `r`.
    pub fn o_column(&self, r: usize) -> usize {
        self.o_rows.iter().position(|&row| row == r).expect("valid grid")
    }

    /// Every invariant this grid violates. Always empty for a constructed grid,
    /// kept for symmetry with [`validate_parts`].
    pub fn validate(&self) -> Vec<GridError> {
        validate_parts(self.n, &self.x_rows, &self.o_rows)
    }

    /// Grid of the (p, q) torus knot: `x_rows[c] = c`, `o_rows[c] = (c + p) mod (p + q)`.
    pub fn torus(p: usize, q: usize) -> Result<Self, GridError> {
        if p == 0 || q == 0 || p + q < 2 || gcd(p, q) != 1 {
            return Err(GridError::NotCoprime { p, q });
        }
        let n = p + q;
        let x_rows = (0..n).collect();
        let o_rows = (0..n).map(|c| (c + p) % n).collect();
        GridDiagram::new(x_rows, o_rows).map_err(|_| GridError::NotCoprime { p, q })
    }

    /// Reflects the columns, which presents the mirror knot.
    pub fn mirror(&self) -> Self {
        GridDiagram {
            n: self.n,
            x_rows: self.x_rows.iter().rev().copied().collect(),
            o_rows: self.o_rows.iter().rev().copied().collect(),
        }
    }

    /// Canonical text form; see [`GridDiagram::from_str`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// A uniformly random grid of size `n` whose diagram is a knot.
    ///
    /// Walking the knot visits the columns in a cyclic order, and the O in
    /// each column shares its row with the X of the next column, so a random
    /// X permutation together with a random `n`-cycle (Sattolo's shuffle)
    /// gives every knot grid with equal probability.
    pub fn random_knot<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self, GridError> {
        if !(2..=MAX_GRID_SIZE).contains(&n) {
            return Err(GridError::BadSize(n));
        }
        let mut x_rows: Vec<usize> = (0..n).collect();
        x_rows.shuffle(rng);
        let mut next: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..i);
            next.swap(i, j);
        }
        let o_rows = (0..n).map(|c| x_rows[next[c]]).collect();
        Self::with_size(n, x_rows, o_rows)
    }

    pub(crate) fn from_parts_unchecked(x_rows: Vec<usize>, o_rows: Vec<usize>) -> Self {
        GridDiagram {
            n: x_rows.len(),
            x_rows,
            o_rows,
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn is_permutation(rows: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    for &r in rows {
        if r >= n || seen[r] {
            return false;
        }
        seen[r] = true;
    }
    true
}

/// Number of closed components traced by the vertical and horizontal segments.
pub(crate) fn component_count(x_rows: &[usize], o_rows: &[usize]) -> usize {
    let n = x_rows.len();
    let mut x_col_of_row = vec![0; n];
    for (c, &r) in x_rows.iter().enumerate() {
        x_col_of_row[r] = c;
    }
    let mut visited = vec![false; n];
    let mut components = 0;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        components += 1;
        let mut c = start;
        while !visited[c] {
            visited[c] = true;
            // up (or down) the column to the O, then along its row to the X
            c = x_col_of_row[o_rows[c]];
        }
    }
    components
}

/// Checks every grid invariant and reports all violations found.
pub fn validate_parts(n: usize, x_rows: &[usize], o_rows: &[usize]) -> Vec<GridError> {
    let mut errors = Vec::new();
    if !(2..=MAX_GRID_SIZE).contains(&n) {
        errors.push(GridError::BadSize(n));
    }
    for (which, rows) in [(Mark::X, x_rows), (Mark::O, o_rows)] {
        if rows.len() != n {
            errors.push(GridError::SizeMismatch {
                which,
                expected: n,
                found: rows.len(),
            });
        } else if !is_permutation(rows, n) {
            errors.push(GridError::NotPermutation { which, n });
        }
    }
    if !errors.is_empty() {
        return errors;
    }
    for c in 0..n {
        if x_rows[c] == o_rows[c] {
            errors.push(GridError::CoincidentMarks { column: c });
        }
    }
    if errors.is_empty() {
        let components = component_count(x_rows, o_rows);
        if components != 1 {
            errors.push(GridError::NotAKnot { components });
        }
    }
    errors
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |rows: &[usize]| {
            rows.iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "{}", self.n)?;
        writeln!(f, "X: {}", join(&self.x_rows))?;
        writeln!(f, "O: {}", join(&self.o_rows))
    }
}

/// Parses the grid file format:
///
/// ```text
/// # optional comment lines
/// 5
/// X: 0 1 2 3 4
/// O: 2 3 4 0 1
/// ```
///
/// Rows are 0-indexed with row 0 at the bottom. Blank lines are ignored.
impl FromStr for GridDiagram {
    type Err = GridError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line, size_line) = lines.next().ok_or(GridError::Syntax {
            line: 0,
            msg: "empty grid file".into(),
        })?;
        let n: usize = size_line.parse().map_err(|_| GridError::Syntax {
            line,
            msg: format!("expected grid size, found {size_line:?}"),
        })?;

        let mut parse_rows = |label: &str| -> Result<Vec<usize>, GridError> {
            let (line, text) = lines.next().ok_or(GridError::Syntax {
                line: 0,
                msg: format!("missing {label} line"),
            })?;
            let rest = text
                .strip_prefix(label)
                .and_then(|t| t.trim_start().strip_prefix(':'))
                .ok_or_else(|| GridError::Syntax {
                    line,
                    msg: format!("expected line starting with {label:?}"),
                })?;
            rest.split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| GridError::Syntax {
                        line,
                        msg: format!("bad row index {tok:?}"),
                    })
                })
                .collect()
        };
        let x_rows = parse_rows("X")?;
        let o_rows = parse_rows("O")?;
        if let Some((line, extra)) = lines.next() {
            return Err(GridError::Syntax {
                line,
                msg: format!("unexpected trailing content {extra:?}"),
            });
        }
        GridDiagram::with_size(n, x_rows, o_rows)
    }
}

/// Winding numbers of the knot around every lattice point, plus the constant
/// `a` in the Alexander grading, kept in eighths so it is never rounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingTable {
    n: usize,
    w: Vec<i32>,
    a_eighths: i64,
}

impl WindingTable {
    /// Ray casting to the right from each lattice point. A strand crossing the
    /// ray upward counts +1, so a counterclockwise loop has winding number 1.
    pub fn new(grid: &GridDiagram) -> Self {
        let n = grid.size();
        let stride = n + 1;
        let mut w = vec![0i32; stride * stride];
        for j in 0..=n {
            let mut acc = 0;
            // columns to the right of lattice x = i are c >= i
            for i in (0..=n).rev() {
                if i < n {
                    acc += strand_sign(grid.x_rows[i], grid.o_rows[i], j);
                }
                w[j * stride + i] = acc;
            }
        }
        let mut sum = 0i64;
        for c in 0..n {
            for r in [grid.x_rows[c], grid.o_rows[c]] {
                for (di, dj) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                    sum += w[(r + dj) * stride + c + di] as i64;
                }
            }
        }
        // a = sum / 8 - (n - 1) / 2
        let a_eighths = sum - 4 * (n as i64 - 1);
        WindingTable { n, w, a_eighths }
    }

    /// Same table computed with leftward rays; used to check direction independence.
    pub fn new_leftward(grid: &GridDiagram) -> Self {
        let n = grid.size();
        let stride = n + 1;
        let mut w = vec![0i32; stride * stride];
        for j in 0..=n {
            let mut acc = 0;
            for i in 0..=n {
                w[j * stride + i] = acc;
                if i < n {
                    // a downward strand on the left of the point runs counterclockwise
                    acc -= strand_sign(grid.x_rows[i], grid.o_rows[i], j);
                }
            }
        }
        let base = WindingTable::new(grid);
        WindingTable {
            n,
            w,
            a_eighths: base.a_eighths,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Winding number at lattice point `(i, j)`, `0 <= i, j <= n`.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i32 {
        self.w[j * (self.n + 1) + i]
    }

    /// `8a` as an exact integer.
    pub fn a_eighths(&self) -> i64 {
        self.a_eighths
    }

    /// `a` itself. For a knot this is always an integer; `None` means the grid
    /// (or the sign convention) is broken.
    pub fn a(&self) -> Option<i64> {
        (self.a_eighths % 8 == 0).then_some(self.a_eighths / 8)
    }
}

/// +1 if the column strand from X to O crosses height `j` going up, -1 going down.
#[inline]
fn strand_sign(x_row: usize, o_row: usize, j: usize) -> i32 {
    if x_row < j && j <= o_row {
        1
    } else if o_row < j && j <= x_row {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_grids_are_knots() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 2..=12 {
            for _ in 0..20 {
                let g = GridDiagram::random_knot(n, &mut rng).unwrap();
                assert!(g.validate().is_empty());
            }
        }
        assert!(GridDiagram::random_knot(1, &mut rng).is_err());
    }

    fn unknot2() -> GridDiagram {
        GridDiagram::new(vec![0, 1], vec![1, 0]).unwrap()
    }

    #[test]
    fn parses_minimal_unknot() {
        let g: GridDiagram = "2\nX: 0 1\nO: 1 0\n".parse().unwrap();
        assert_eq!(g, unknot2());
    }

    #[test]
    fn parses_with_comments_and_round_trips() {
        let text = "# trefoil\n\n5\nX: 0 1 2 3 4\nO:   2 3 4 0 1\n";
        let g: GridDiagram = text.parse().unwrap();
        assert_eq!(g, GridDiagram::torus(2, 3).unwrap());
        assert_eq!(g.to_text(), "5\nX: 0 1 2 3 4\nO: 2 3 4 0 1\n");
        assert_eq!(g.to_text().parse::<GridDiagram>().unwrap(), g);
    }

    #[test]
    fn rejects_coincident_marks() {
        let err = "2\nX: 0 1\nO: 0 1\n".parse::<GridDiagram>().unwrap_err();
        assert!(matches!(err, GridError::CoincidentMarks { column: 0 }));
    }

    #[test]
    fn rejects_size_mismatch() {
        let errs = validate_parts(3, &[0, 1], &[1, 0]);
        assert!(errs
            .iter()
            .any(|e| matches!(e, GridError::SizeMismatch { expected: 3, found: 2, .. })));
    }

    #[test]
    fn rejects_non_permutations_and_syntax() {
        assert!(matches!(
            "3\nX: 0 0 1\nO: 1 2 0\n".parse::<GridDiagram>(),
            Err(GridError::NotPermutation { which: Mark::X, .. })
        ));
        assert!(matches!(
            "3\nX: 0 a 1\nO: 1 2 0\n".parse::<GridDiagram>(),
            Err(GridError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            "3\nO: 0 1 2\nX: 1 2 0\n".parse::<GridDiagram>(),
            Err(GridError::Syntax { .. })
        ));
        assert!(matches!("".parse::<GridDiagram>(), Err(GridError::Syntax { .. })));
    }

    #[test]
    fn rejects_links() {
        // two unlinked 2x2 unknots side by side
        let errs = validate_parts(4, &[0, 1, 2, 3], &[1, 0, 3, 2]);
        assert_eq!(errs, vec![GridError::NotAKnot { components: 2 }]);
    }

    #[test]
    fn validate_reports_every_problem() {
        let errs = validate_parts(3, &[0, 0, 1], &[0, 1]);
        assert_eq!(errs.len(), 2);
        assert!(unknot2().validate().is_empty());
    }

    #[test]
    fn torus_grids() {
        let t = GridDiagram::torus(3, 4).unwrap();
        assert_eq!(t.size(), 7);
        assert_eq!(t.o_rows(), &[3, 4, 5, 6, 0, 1, 2]);
        assert!(GridDiagram::torus(2, 4).is_err());
        assert_eq!(GridDiagram::torus(2, 1).unwrap().size(), 3);
    }

    #[test]
    fn unknot_winding_numbers() {
        let wt = WindingTable::new(&unknot2());
        for i in 0..=2 {
            for j in 0..=2 {
                let expected = if (i, j) == (1, 1) { -1 } else { 0 };
                assert_eq!(wt.at(i, j), expected, "w({i},{j})");
            }
        }
        assert_eq!(wt.a(), Some(-1));
        assert_eq!(wt.a_eighths(), -8);
    }

    #[test]
    fn mirror_is_an_involution() {
        let g = GridDiagram::torus(3, 5).unwrap();
        assert_ne!(g.mirror(), g);
        assert_eq!(g.mirror().mirror(), g);
        assert!(g.mirror().validate().is_empty());
    }

    #[test]
    fn boundary_winding_vanishes() {
        let g = GridDiagram::torus(3, 4).unwrap();
        let wt = WindingTable::new(&g);
        let n = g.size();
        for k in 0..=n {
            assert_eq!(wt.at(0, k), 0);
            assert_eq!(wt.at(n, k), 0);
            assert_eq!(wt.at(k, 0), 0);
            assert_eq!(wt.at(k, n), 0);
        }
    }
}
