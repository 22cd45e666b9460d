//! Integer sequence fixtures and prefix comparison.
//!
//! Fixture files hold one sequence per line, `<id> <offset> <terms>`, with
//! comma-separated integer terms and `#` comments.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use thiserror::Error;

use crate::families::{FamilyInstance, OeisTag};
use crate::fps::{factorial, Rat, Series};
use crate::matrix::TriMatrix;

const BUILTIN: &str = include_str!("../fixtures/oeis.txt");

/// Errors from reading a fixture file.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FixtureError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// A stored sequence prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OeisFixture {
    /// Identifier such as `A000108`.
    pub id: String,
    /// Index of the first term.
    pub offset: i64,
    /// The terms, starting at `offset`.
    pub terms: Vec<BigInt>,
}

/// Parsed fixtures keyed by identifier.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureSet {
    fixtures: BTreeMap<String, OeisFixture>,
    /// Non-fatal issues found while parsing.
    pub warnings: Vec<String>,
}

impl FixtureSet {
    pub fn get(&self, id: &str) -> Option<&OeisFixture> {
        self.fixtures.get(id)
    }

    pub fn len(&self) -> usize {
        self.fixtures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixtures.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.fixtures.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &OeisFixture> {
        self.fixtures.values()
    }
}

fn valid_id(id: &str) -> bool {
    id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit())
}

/// Parses fixture text.
pub fn parse_fixtures(text: &str) -> Result<FixtureSet, FixtureError> {
    let mut set = FixtureSet::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fail = |message: String| FixtureError::Format { line, message };
        let mut fields = content.split_whitespace();
        let id = fields.next().expect("nonempty line");
        if !valid_id(id) {
            return Err(fail(format!("malformed id `{id}`")));
        }
        let offset: i64 = fields
            .next()
            .ok_or_else(|| fail("missing offset".into()))?
            .parse()
            .map_err(|_| fail("offset is not an integer".into()))?;
        let terms_field = fields.next().ok_or_else(|| fail("missing terms".into()))?;
        if let Some(extra) = fields.next() {
            return Err(fail(format!("unexpected field `{extra}`")));
        }
        let terms = terms_field
            .split(',')
            .map(|t| t.parse::<BigInt>().map_err(|_| fail(format!("bad term `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if set.fixtures.contains_key(id) {
            set.warnings.push(format!("line {line}: duplicate id {id} replaces the earlier entry"));
        }
        set.fixtures.insert(
            id.to_string(),
            OeisFixture {
                id: id.to_string(),
                offset,
                terms,
            },
        );
    }
    if set.fixtures.is_empty() {
        set.warnings.push("no fixtures found".into());
    }
    Ok(set)
}

/// Reads and parses a fixture file.
pub fn load_fixtures(path: &Path) -> Result<FixtureSet, FixtureError> {
    let text = std::fs::read_to_string(path).map_err(|e| FixtureError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_fixtures(&text)
}

/// The fixtures shipped with the crate.
pub fn builtin_fixtures() -> FixtureSet {
    parse_fixtures(BUILTIN).expect("bundled fixtures are well formed")
}

/// First disagreement between a fixture and a series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Position within the fixture's term list.
    pub index: usize,
    pub expected: BigInt,
    /// The value taken from the series.
    pub found: Rat,
}

/// Outcome of comparing a series with a fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OeisReport {
    pub id: String,
    pub shift: i64,
    /// Number of terms compared.
    pub compared: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl OeisReport {
    /// At least one term compared and none differed.
    pub fn passed(&self) -> bool {
        self.compared > 0 && self.first_mismatch.is_none()
    }
}

impl fmt::Display for OeisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None if self.compared > 0 => write!(f, "{} shift {}: match on {} terms", self.id, self.shift, self.compared),
            None => write!(f, "{} shift {}: no overlapping terms", self.id, self.shift),
            Some(m) => write!(
                f,
                "{} shift {}: mismatch at index {} (expected {}, found {})",
                self.id, self.shift, m.index, m.expected, m.found
            ),
        }
    }
}

/// Compares term `a(n)` of the fixture with coefficient `n + shift`.
///
/// With `egf`, the coefficient is multiplied by its index factorial first.
/// Terms whose coefficient index falls outside the series are skipped.
pub fn oeis_check(series: &Series, fixture: &OeisFixture, shift: i64, egf: bool) -> OeisReport {
    let mut compared = 0;
    let mut first_mismatch = None;
    for (i, expected) in fixture.terms.iter().enumerate() {
        let idx = fixture.offset + i as i64 + shift;
        if idx < 0 {
            continue;
        }
        let Some(c) = series.get(idx as usize) else { break };
        let value = if egf {
            c * Rat::from_integer(factorial(idx as usize))
        } else {
            c.clone()
        };
        compared += 1;
        if value != Rat::from_integer(expected.clone()) {
            first_mismatch = Some(Mismatch {
                index: i,
                expected: expected.clone(),
                found: value,
            });
            break;
        }
    }
    OeisReport {
        id: fixture.id.clone(),
        shift,
        compared,
        first_mismatch,
    }
}

/// Compares a triangle, flattened by rows, with a fixture.
pub fn oeis_check_triangle(m: &TriMatrix, fixture: &OeisFixture) -> OeisReport {
    let flat = Series::from_coeffs(m.flatten());
    oeis_check(&flat, fixture, -fixture.offset, false)
}

/// Result of checking one tag of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagCheck {
    pub tag: OeisTag,
    /// `None` when the fixture set lacks the id or the family lacks the series.
    pub report: Option<OeisReport>,
}

impl TagCheck {
    pub fn passed(&self) -> bool {
        self.report.as_ref().is_some_and(OeisReport::passed)
    }
}

/// Checks every sequence tag of a family against the fixtures.
pub fn check_family_tags(inst: &FamilyInstance, fixtures: &FixtureSet) -> Vec<TagCheck> {
    inst.oeis
        .iter()
        .map(|tag| {
            let report = match (fixtures.get(&tag.id), inst.series(&tag.target)) {
                (Some(fx), Some(s)) => Some(oeis_check(&s, fx, tag.shift, tag.egf)),
                _ => None,
            };
            TagCheck {
                tag: tag.clone(),
                report,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::series::catalan;

    #[test]
    fn parses_single_line() {
        let set = parse_fixtures("A000108 0 1,1,2,5,14,42\n").unwrap();
        let fx = set.get("A000108").unwrap();
        assert_eq!(fx.offset, 0);
        assert_eq!(fx.terms.len(), 6);
        assert!(set.warnings.is_empty());
    }

    #[test]
    fn empty_input_warns() {
        let set = parse_fixtures("# nothing here\n\n").unwrap();
        assert!(set.is_empty());
        assert_eq!(set.warnings.len(), 1);
    }

    #[test]
    fn malformed_id_reports_line() {
        let err = parse_fixtures("A000108 0 1,1\nB123 0 1,2\n").unwrap_err();
        assert!(matches!(err, FixtureError::Format { line: 2, .. }));
    }

    #[test]
    fn bad_term_is_format_error() {
        assert!(matches!(
            parse_fixtures("A000001 0 1,x,2").unwrap_err(),
            FixtureError::Format { line: 1, .. }
        ));
    }

    #[test]
    fn catalan_matches_and_shift_breaks_it() {
        let set = parse_fixtures("A000108 0 1,1,2,5,14,42,132").unwrap();
        let fx = set.get("A000108").unwrap();
        let c = catalan(10).unwrap();
        assert!(oeis_check(&c, fx, 0, false).passed());
        let off = oeis_check(&c, fx, 1, false);
        assert_eq!(off.first_mismatch.unwrap().index, 1);
    }

    #[test]
    fn builtin_set_has_all_ids() {
        assert_eq!(builtin_fixtures().len(), 42);
    }
}
