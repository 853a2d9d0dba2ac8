//! Bigraded Poincaré polynomials `sum dim * q^m t^a` and Laurent polynomials in `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by (1 + q^-1 t^-1)^{power} is not exact; residual {residual}")]
    InexactDivision { power: u32, residual: BigradedPoly },
    #[error("division by (1 + q^-1 t^-1)^{power} produced a negative coefficient at t^{a} q^{m}")]
    NegativeQuotient { power: u32, a: i32, m: i32 },
    #[error("term (a = {a}, m = {m}) has dimension {found} but its mirror under the symmetry has {expected}")]
    SymmetryConflict { a: i32, m: i32, found: u64, expected: u64 },
}

/// One entry of the JSON form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub a: i32,
    pub m: i32,
    pub dim: u64,
}

/// Map `(alexander, maslov) -> dimension`; zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Term>", from = "Vec<Term>")]
pub struct BigradedPoly {
    terms: BTreeMap<(i32, i32), u64>,
}

impl From<BigradedPoly> for Vec<Term> {
    fn from(p: BigradedPoly) -> Self {
        p.terms().collect()
    }
}

impl From<Vec<Term>> for BigradedPoly {
    fn from(terms: Vec<Term>) -> Self {
        let mut p = BigradedPoly::new();
        for t in terms {
            p.add(t.a, t.m, t.dim);
        }
        p
    }
}

impl BigradedPoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// The constant 1.
    pub fn one() -> Self {
        let mut p = Self::new();
        p.add(0, 0, 1);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i32, u64)>) -> Self {
        let mut p = Self::new();
        for (a, m, dim) in terms {
            p.add(a, m, dim);
        }
        p
    }

    pub fn add(&mut self, a: i32, m: i32, dim: u64) {
        if dim > 0 {
            *self.terms.entry((a, m)).or_default() += dim;
        }
    }

    /// Sets a coefficient, removing the entry when `dim == 0`.
    pub fn set(&mut self, a: i32, m: i32, dim: u64) {
        if dim == 0 {
            self.terms.remove(&(a, m));
        } else {
            self.terms.insert((a, m), dim);
        }
    }

    pub fn get(&self, a: i32, m: i32) -> u64 {
        self.terms.get(&(a, m)).copied().unwrap_or(0)
    }

    /// Terms sorted by Alexander then Maslov grading.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(&(a, m), &dim)| Term { a, m, dim })
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn total_dim(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn max_alexander(&self) -> Option<i32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn min_alexander(&self) -> Option<i32> {
        self.terms.keys().map(|&(a, _)| a).min()
    }

    /// Terms with Alexander grading at least `floor`.
    pub fn truncate_below(&self, floor: i32) -> Self {
        BigradedPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(a, _), _)| a >= floor)
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    pub fn map_gradings(&self, f: impl Fn(i32, i32) -> (i32, i32)) -> Self {
        let mut out = Self::new();
        for t in self.terms() {
            let (a, m) = f(t.a, t.m);
            out.add(a, m, t.dim);
        }
        out
    }

    /// The HFK of the mirror knot: `(a, m) -> (a, 2a - m)`.
    pub fn mirror(&self) -> Self {
        self.map_gradings(|a, m| (a, 2 * a - m))
    }

    /// `(a, m) -> (-a, -m)`; relates spectral sequence pages of a knot and its mirror.
    pub fn dual(&self) -> Self {
        self.map_gradings(|a, m| (-a, -m))
    }

    /// Multiplies by `(1 + q^-1 t^-1)^power`.
    pub fn times_s_factor(&self, power: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..power {
            let mut next = p.clone();
            for t in p.terms() {
                next.add(t.a - 1, t.m - 1, t.dim);
            }
            p = next;
        }
        p
    }

    /// Exact quotient by `(1 + q^-1 t^-1)^power`, dividing one factor at a time
    /// from the top of each diagonal downward.
    pub fn divide_s_factor(&self, power: u32) -> Result<Self, PolyError> {
        let mut p = self.clone();
        for _ in 0..power {
            p = p.divide_once(None, power)?;
        }
        Ok(p)
    }

    /// Quotient by `(1 + q^-1 t^-1)^power` for Alexander gradings `>= floor`,
    /// using only the terms of `self` at or above `floor`. Terms below `floor`
    /// are neither used nor checked.
    pub fn divide_s_factor_above(&self, power: u32, floor: i32) -> Result<Self, PolyError> {
        let mut p = self.truncate_below(floor);
        for _ in 0..power {
            p = p.divide_once(Some(floor), power)?;
        }
        Ok(p)
    }

    fn divide_once(&self, floor: Option<i32>, power: u32) -> Result<Self, PolyError> {
        // diagonal index a - m is preserved by q^-1 t^-1
        let mut diagonals: BTreeMap<i32, BTreeMap<i32, i64>> = BTreeMap::new();
        for t in self.terms() {
            diagonals.entry(t.a - t.m).or_default().insert(t.a, t.dim as i64);
        }
        let mut quotient = Self::new();
        let mut residual = Self::new();
        for (diag, entries) in diagonals {
            let top = *entries.keys().next_back().expect("nonempty diagonal");
            let bottom = floor.unwrap_or(*entries.keys().next().expect("nonempty diagonal"));
            let mut above = 0i64;
            for a in (bottom..=top).rev() {
                let q = entries.get(&a).copied().unwrap_or(0) - above;
                let is_last = floor.is_none() && a == bottom;
                if is_last {
                    if q != 0 {
                        residual.add(a, a - diag, q.unsigned_abs());
                    }
                    break;
                }
                if q < 0 {
                    return Err(PolyError::NegativeQuotient { power, a, m: a - diag });
                }
                quotient.add(a, a - diag, q as u64);
                above = q;
            }
        }
        if !residual.is_empty() {
            return Err(PolyError::InexactDivision { power, residual });
        }
        Ok(quotient)
    }

    /// Adds the terms forced by `dim(a, m) = dim(-a, m - 2a)` for `a > 0`.
    pub fn symmetry_complete(&self) -> Result<Self, PolyError> {
        let mut out = self.clone();
        for t in self.terms().filter(|t| t.a > 0) {
            let (a, m) = (-t.a, t.m - 2 * t.a);
            match self.get(a, m) {
                0 => out.set(a, m, t.dim),
                d if d == t.dim => {}
                found => {
                    return Err(PolyError::SymmetryConflict {
                        a,
                        m,
                        found,
                        expected: t.dim,
                    })
                }
            }
        }
        // every negative term must be the image of a positive one
        for t in self.terms().filter(|t| t.a < 0) {
            let expected = self.get(-t.a, t.m - 2 * t.a);
            if expected != t.dim {
                return Err(PolyError::SymmetryConflict {
                    a: t.a,
                    m: t.m,
                    found: t.dim,
                    expected,
                });
            }
        }
        Ok(out)
    }

    /// True when `dim(a, m) = dim(-a, m - 2a)` everywhere.
    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|t| self.get(-t.a, t.m - 2 * t.a) == t.dim)
    }

    /// `sum (-1)^m dim t^a`.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for t in self.terms() {
            let sign = if t.m.rem_euclid(2) == 0 { 1 } else { -1 };
            out.add(t.a, sign * t.dim as i64);
        }
        out
    }
}

fn power_str(var: char, e: i32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        2..=9 => format!("{var}^{e}"),
        _ => format!("{var}^{{{e}}}"),
    }
}

/// `c q^m` with 1's elided; a bare constant when `m == 0`.
fn coef_q(c: u64, m: i32) -> String {
    match (c, m) {
        (_, 0) => c.to_string(),
        (1, _) => power_str('q', m),
        _ => format!("{c}{}", power_str('q', m)),
    }
}

/// Prints in the tabular style: grouped by Alexander grading, ascending, e.g.
/// `(q^{-2}+q^{-1})t^{-2}+4(q^{-1}+1)t^{-1}+7+6q`.
impl fmt::Display for BigradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let mut groups: BTreeMap<i32, Vec<(i32, u64)>> = BTreeMap::new();
        for t in self.terms() {
            groups.entry(t.a).or_default().push((t.m, t.dim));
        }
        let mut parts = Vec::new();
        for (a, group) in groups {
            if a == 0 {
                parts.extend(group.iter().map(|&(m, c)| coef_q(c, m)));
                continue;
            }
            let t = power_str('t', a);
            if let [(m, c)] = group[..] {
                let head = if (c, m) == (1, 0) { String::new() } else { coef_q(c, m) };
                parts.push(format!("{head}{t}"));
                continue;
            }
            let c0 = group[0].1;
            if group.iter().all(|&(_, c)| c == c0) {
                let inner: Vec<_> = group.iter().map(|&(m, _)| coef_q(1, m)).collect();
                let lead = if c0 == 1 { String::new() } else { c0.to_string() };
                parts.push(format!("{lead}({}){t}", inner.join("+")));
            } else {
                let inner: Vec<_> = group.iter().map(|&(m, c)| coef_q(c, m)).collect();
                parts.push(format!("({}){t}", inner.join("+")));
            }
        }
        f.write_str(&parts.join("+"))
    }
}

/// Accepts both the grouped form printed by `Display` and fully expanded
/// sums; whitespace and TeX braces are optional.
impl FromStr for BigradedPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser { s: &chars, pos: 0 };
        if chars == ['0'] {
            return Ok(BigradedPoly::new());
        }
        let terms = parser.sum()?;
        if parser.pos != chars.len() {
            return Err(parser.error("trailing input"));
        }
        let mut p = BigradedPoly::new();
        for (c, m, a) in terms {
            p.add(a, m, c);
        }
        Ok(p)
    }
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Vec<(u64, i32, i32)>, PolyError> {
        let mut out = self.term()?;
        while self.eat('+') {
            out.extend(self.term()?);
        }
        Ok(out)
    }

    fn unsigned(&mut self) -> Option<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.s[start..self.pos].iter().collect::<String>().parse().ok())?
    }

    fn exponent(&mut self) -> Result<i32, PolyError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let braced = self.eat('{');
        let negative = self.eat('-');
        let v = self.unsigned().ok_or_else(|| self.error("expected exponent"))? as i32;
        if braced && !self.eat('}') {
            return Err(self.error("expected '}'"));
        }
        Ok(if negative { -v } else { v })
    }

    /// `[coef] ['(' sum ')'] [q^m] [t^a]`
    fn term(&mut self) -> Result<Vec<(u64, i32, i32)>, PolyError> {
        let start = self.pos;
        let coef = self.unsigned().unwrap_or(1);
        let mut inner = vec![(1u64, 0i32, 0i32)];
        if self.eat('(') {
            inner = self.sum()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
        }
        let mut m = 0;
        let mut a = 0;
        loop {
            if self.eat('q') {
                m += self.exponent()?;
            } else if self.eat('t') {
                a += self.exponent()?;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.error("expected a term"));
        }
        Ok(inner
            .into_iter()
            .map(|(c, im, ia)| (c * coef, im + m, ia + a))
            .collect())
    }
}

/// A Laurent polynomial in `t` with integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::default();
        for (e, c) in coeffs {
            p.add(e, c);
        }
        p
    }

    pub fn add(&mut self, exp: i32, c: i64) {
        let entry = self.coeffs.entry(exp).or_default();
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Invariant under `t <-> t^-1`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(&e, &c)| self.coeff(-e) == c)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0) == 1
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, &c) in &self.coeffs {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (mag, e) {
                (_, 0) => mag.to_string(),
                (1, _) => power_str('t', e),
                _ => format!("{mag}{}", power_str('t', e)),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}
