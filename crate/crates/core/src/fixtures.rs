//! Reference records (grid plus expected invariants) and their verification.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::AlexanderRange;
use crate::grid::{GridDiagram, GridError};
use crate::homology::{HomologyComputation, HomologyError};
use crate::poly::BigradedPoly;
use crate::spectral::{e2_page, SpectralError, TauResult};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed fixture JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("record {name}: {source}")]
    Grid {
        name: String,
        #[source]
        source: GridError,
    },
}

/// Grid as stored in JSON: `{"n": 5, "x": [...], "o": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub x: Vec<usize>,
    pub o: Vec<usize>,
}

impl GridSpec {
    pub fn to_grid(&self) -> Result<GridDiagram, GridError> {
        GridDiagram::with_size(self.n, self.x.clone(), self.o.clone())
    }
}

impl From<&GridDiagram> for GridSpec {
    fn from(g: &GridDiagram) -> Self {
        GridSpec {
            n: g.size(),
            x: g.x_rows().to_vec(),
            o: g.o_rows().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRecord {
    pub name: String,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    pub hfk: BigradedPoly,
    #[serde(default)]
    pub tau: Option<i32>,
    /// Why `tau` is null, when it was computed but not determined.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_reason: Option<String>,
    #[serde(default)]
    pub e2: Option<BigradedPoly>,
}

impl FixtureRecord {
    /// The record with every invariant replaced by that of the mirror knot.
    pub fn mirrored(&self) -> FixtureRecord {
        FixtureRecord {
            name: self.name.clone(),
            grid: self.grid.clone(),
            hfk: self.hfk.mirror(),
            tau: self.tau.map(|t| -t),
            tau_reason: self.tau_reason.clone(),
            e2: self.e2.as_ref().map(BigradedPoly::dual),
        }
    }

    /// Internal consistency: HFK symmetric and tau within the HFK support.
    pub fn sanity_problems(&self) -> Vec<String> {
        let mut problems = Vec::new();
        if !self.hfk.is_symmetric() {
            problems.push("hfk is not symmetric".to_string());
        }
        if let (Some(tau), Some(top)) = (self.tau, self.hfk.max_alexander()) {
            if tau.abs() > top {
                problems.push(format!("|tau| = {} exceeds the top Alexander grading {top}", tau.abs()));
            }
        }
        problems
    }
}

/// Reads a JSON array of records, or a single record.
pub fn parse_fixtures(text: &str) -> Result<Vec<FixtureRecord>, FixtureError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    Ok(if value.is_array() {
        serde_json::from_value(value)?
    } else {
        vec![serde_json::from_value(value)?]
    })
}

pub fn load_fixtures(path: &Path) -> Result<Vec<FixtureRecord>, FixtureError> {
    let text = std::fs::read_to_string(path).map_err(|source| FixtureError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_fixtures(&text)
}

/// One bidegree where expected and computed dimensions differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDiff {
    pub a: i32,
    pub m: i32,
    pub expected: u64,
    pub found: u64,
}

pub fn term_diff(expected: &BigradedPoly, found: &BigradedPoly) -> Vec<TermDiff> {
    let mut keys: Vec<(i32, i32)> = expected.terms().chain(found.terms()).map(|t| (t.a, t.m)).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .filter_map(|(a, m)| {
            let (e, f) = (expected.get(a, m), found.get(a, m));
            (e != f).then_some(TermDiff { a, m, expected: e, found: f })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    Hfk(Vec<TermDiff>),
    E2(Vec<TermDiff>),
    Tau { expected: i32, found: TauResult },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = |f: &mut fmt::Formatter<'_>, what: &str, diffs: &[TermDiff]| {
            write!(f, "{what}:")?;
            for d in diffs {
                write!(f, " (a={}, m={}) expected {} found {};", d.a, d.m, d.expected, d.found)?;
            }
            Ok(())
        };
        match self {
            Mismatch::Hfk(d) => terms(f, "hfk", d),
            Mismatch::E2(d) => terms(f, "e2", d),
            Mismatch::Tau { expected, found } => write!(f, "tau: expected {expected} found {found}"),
        }
    }
}

#[derive(Debug)]
pub enum Outcome {
    Passed { mirrored: bool },
    Skipped(String),
    Failed(Vec<Mismatch>),
    Error(String),
}

#[derive(Debug)]
pub struct RecordReport {
    pub name: String,
    pub outcome: Outcome,
}

impl RecordReport {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Passed { .. } | Outcome::Skipped(_))
    }
}

impl fmt::Display for RecordReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Passed { mirrored: false } => write!(f, "PASS {}", self.name),
            Outcome::Passed { mirrored: true } => write!(f, "PASS {} (mirror)", self.name),
            Outcome::Skipped(why) => write!(f, "SKIP {}: {why}", self.name),
            Outcome::Failed(ms) => {
                write!(f, "FAIL {}", self.name)?;
                for m in ms {
                    write!(f, "\n    {m}")?;
                }
                Ok(())
            }
            Outcome::Error(e) => write!(f, "ERROR {}: {e}", self.name),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub range: AlexanderRange,
    pub allow_mirror: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            range: AlexanderRange::NonNegative,
            allow_mirror: false,
        }
    }
}

/// What a grid actually yields, restricted to the fields a record asks for.
#[derive(Debug, Clone)]
pub struct Computed {
    pub hfk: BigradedPoly,
    pub tau: Option<TauResult>,
    pub e2: Option<BigradedPoly>,
}

#[derive(Debug, Error)]
pub enum ComputeError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

pub fn compute(grid: &GridDiagram, range: AlexanderRange, spectral: bool) -> Result<Computed, ComputeError> {
    let comp = HomologyComputation::run(grid, range)?;
    if !spectral {
        return Ok(Computed {
            hfk: comp.hfk()?,
            tau: None,
            e2: None,
        });
    }
    let pages = e2_page(&comp)?;
    Ok(Computed {
        tau: Some(pages.tau()?),
        hfk: pages.e1,
        e2: Some(pages.e2),
    })
}

fn mismatches(expected: &FixtureRecord, found: &Computed) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let hfk = term_diff(&expected.hfk, &found.hfk);
    if !hfk.is_empty() {
        out.push(Mismatch::Hfk(hfk));
    }
    if let (Some(e2), Some(got)) = (&expected.e2, &found.e2) {
        let d = term_diff(e2, got);
        if !d.is_empty() {
            out.push(Mismatch::E2(d));
        }
    }
    if let (Some(tau), Some(got)) = (expected.tau, &found.tau) {
        if got.value() != Some(tau) {
            out.push(Mismatch::Tau {
                expected: tau,
                found: got.clone(),
            });
        }
    }
    out
}

/// Recomputes one record. Records without a grid are skipped.
pub fn verify_record(record: &FixtureRecord, opts: VerifyOptions) -> RecordReport {
    let report = |outcome| RecordReport {
        name: record.name.clone(),
        outcome,
    };
    let Some(spec) = &record.grid else {
        return report(Outcome::Skipped("no grid".into()));
    };
    let grid = match spec.to_grid() {
        Ok(g) => g,
        Err(e) => return report(Outcome::Error(e.to_string())),
    };
    let spectral = record.tau.is_some() || record.e2.is_some();
    let found = match compute(&grid, opts.range, spectral) {
        Ok(c) => c,
        Err(e) => return report(Outcome::Error(e.to_string())),
    };
    let direct = mismatches(record, &found);
    if direct.is_empty() {
        return report(Outcome::Passed { mirrored: false });
    }
    if opts.allow_mirror && mismatches(&record.mirrored(), &found).is_empty() {
        return report(Outcome::Passed { mirrored: true });
    }
    report(Outcome::Failed(direct))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(grid: Option<GridSpec>, hfk: &str, tau: Option<i32>) -> FixtureRecord {
        FixtureRecord {
            name: "test".into(),
            grid,
            hfk: hfk.parse().unwrap(),
            tau,
            tau_reason: None,
            e2: None,
        }
    }

    fn trefoil() -> Option<GridSpec> {
        Some(GridSpec::from(&GridDiagram::torus(2, 3).unwrap()))
    }

    #[test]
    fn exact_and_mirrored_matches() {
        let direct = record(trefoil(), "t^{-1}+q+q^2t", Some(-1));
        assert!(matches!(
            verify_record(&direct, VerifyOptions::default()).outcome,
            Outcome::Passed { mirrored: false }
        ));
        let mirrored = direct.mirrored();
        assert!(matches!(
            verify_record(&mirrored, VerifyOptions::default()).outcome,
            Outcome::Failed(_)
        ));
        let opts = VerifyOptions {
            allow_mirror: true,
            ..Default::default()
        };
        assert!(matches!(
            verify_record(&mirrored, opts).outcome,
            Outcome::Passed { mirrored: true }
        ));
    }

    #[test]
    fn corrupted_dimension_reports_the_term() {
        let bad = record(trefoil(), "t^{-1}+2q+q^2t", None);
        let Outcome::Failed(ms) = verify_record(&bad, VerifyOptions::default()).outcome else {
            panic!("should fail");
        };
        assert_eq!(
            ms,
            vec![Mismatch::Hfk(vec![TermDiff {
                a: 0,
                m: 1,
                expected: 2,
                found: 1
            }])]
        );
    }

    #[test]
    fn records_without_grid_are_skipped() {
        let r = verify_record(&record(None, "1", Some(0)), VerifyOptions::default());
        assert!(matches!(r.outcome, Outcome::Skipped(_)));
        assert!(r.passed());
    }

    #[test]
    fn single_record_or_array() {
        let one = r#"{"name":"u","grid":{"n":2,"x":[0,1],"o":[1,0]},"hfk":[{"a":0,"m":0,"dim":1}],"tau":0,"e2":null}"#;
        assert_eq!(parse_fixtures(one).unwrap().len(), 1);
        assert_eq!(parse_fixtures(&format!("[{one},{one}]")).unwrap().len(), 2);
    }
}
