//! Catalog of named pseudo-involution families.
//!
//! Every constructor returns a [`FamilyInstance`] whose pseudo-involution
//! property, and B-function where a closed form is known, has been checked at
//! the requested truncation order.

pub mod chebyshev;
mod catalog;
pub mod series;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exponential::ExpRiordanArray;
use crate::fps::{Rat, Series, SeriesError};
use crate::laurent::LaurentRational;
use crate::riordan::{b_function_from_f, RiordanArray, RiordanError};
use crate::theorems::TheoremError;

pub use catalog::{list_families, FamilyDescriptor};

/// Named rational parameters, e.g. `k = 3`.
pub type Params = BTreeMap<String, Rat>;

/// Errors from family construction.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parameter `{name}`: {reason}")]
    BadParameter { name: String, reason: String },
    #[error("family `{family}` failed its construction check: {detail}")]
    ConstructionCheckFailed { family: String, detail: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Riordan(#[from] RiordanError),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
}

/// Whether a family lives in the ordinary or the exponential Riordan group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrayKind {
    /// Ordinary generating functions.
    Ordinary,
    /// Exponential generating functions.
    Exponential,
}

impl fmt::Display for ArrayKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrayKind::Ordinary => write!(f, "ordinary"),
            ArrayKind::Exponential => write!(f, "exponential"),
        }
    }
}

/// A pointer from a series of a family to an integer sequence fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OeisTag {
    /// Sequence identifier such as `A000108`.
    pub id: String,
    /// `g`, `f`, `B`, or the name of an extra series.
    pub target: String,
    /// Term `a(n)` of the fixture is compared with coefficient `n + shift`.
    pub shift: i64,
    /// Compare `n!` times the coefficients instead of the coefficients.
    pub egf: bool,
}

/// A constructed and checked family member.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    /// Catalog name.
    pub name: String,
    /// Parameters after defaults were applied.
    pub params: Params,
    /// Ordinary or exponential.
    pub kind: ArrayKind,
    /// First column generating function.
    pub g: Series,
    /// Multiplier function.
    pub f: Series,
    /// The function `gamma` with `g = 1 + z gamma(g)` or `g = exp(z gamma(g))`, when one is used.
    pub gamma: Option<LaurentRational>,
    /// Closed form of the B-function of `f`, when known.
    pub expected_b: Option<Series>,
    /// Further named series attached to the family.
    pub extras: Vec<(String, Series)>,
    /// Sequence fixtures attached to the family's series.
    pub oeis: Vec<OeisTag>,
}

impl FamilyInstance {
    /// The pair as an ordinary Riordan array.
    pub fn array(&self) -> RiordanArray {
        RiordanArray::new(self.g.clone(), self.f.clone()).expect("checked on construction")
    }

    /// The pair as an exponential Riordan array.
    pub fn exp_array(&self) -> ExpRiordanArray {
        ExpRiordanArray::new(self.g.clone(), self.f.clone()).expect("checked on construction")
    }

    /// Truncation order of the pair.
    pub fn order(&self) -> usize {
        self.g.order().min(self.f.order())
    }

    /// Looks up `g`, `f`, `B` or an extra series by name.
    pub fn series(&self, target: &str) -> Option<Series> {
        match target {
            "g" => Some(self.g.clone()),
            "f" => Some(self.f.clone()),
            "B" => b_function_from_f(&self.f).ok().map(|r| r.b),
            other => self
                .extras
                .iter()
                .find(|(n, _)| n == other)
                .map(|(_, s)| s.clone()),
        }
    }
}

/// Builds a family by name with the given parameters at truncation order `order`.
pub fn make_family(name: &str, params: &Params, order: usize) -> Result<FamilyInstance, FamilyError> {
    let inst = catalog::build(name, params, order)?;
    check_instance(&inst, order)?;
    Ok(inst)
}

/// Builds a family from `key=value` parameter pairs.
pub fn make_family_with(name: &str, params: &[(&str, i64)], order: usize) -> Result<FamilyInstance, FamilyError> {
    let p: Params = params
        .iter()
        .map(|(k, v)| (k.to_string(), crate::fps::rat(*v)))
        .collect();
    make_family(name, &p, order)
}

fn check_instance(inst: &FamilyInstance, order: usize) -> Result<(), FamilyError> {
    let fail = |detail: String| FamilyError::ConstructionCheckFailed {
        family: inst.name.clone(),
        detail,
    };
    crate::riordan::RiordanArray::new(inst.g.clone(), inst.f.clone())?;
    let report = crate::riordan::RiordanArray::new(inst.g.clone(), inst.f.clone())?
        .is_pseudo_involution(order);
    if !report.holds {
        return Err(fail(format!("pseudo-involution check: {:?}", report.first_failure)));
    }
    if let Some(expected) = &inst.expected_b {
        if inst.f.coeff(1) == &Rat::from_integer(1.into()) && order >= 2 {
            let b = b_function_from_f(&inst.f)?;
            if !b.is_consistent() {
                return Err(fail(format!("B residuals at {:?}", b.residual_orders)));
            }
            if let Some(k) = b.b.first_difference(expected) {
                return Err(fail(format!("B-function differs from the closed form at order {k}")));
            }
        }
    }
    Ok(())
}

pub(crate) fn int_param(params: &Params, name: &str, default: i64) -> Result<i64, FamilyError> {
    match params.get(name) {
        None => Ok(default),
        Some(v) if v.is_integer() => v.to_integer().to_i64().ok_or_else(|| FamilyError::BadParameter {
            name: name.into(),
            reason: "out of range".into(),
        }),
        Some(v) => Err(FamilyError::BadParameter {
            name: name.into(),
            reason: format!("expected an integer, found {v}"),
        }),
    }
}

pub(crate) fn rat_param(params: &Params, name: &str, default: Rat) -> Rat {
    params.get(name).cloned().unwrap_or(default)
}

pub(crate) fn nonzero(name: &str, v: &Rat) -> Result<(), FamilyError> {
    if v.is_zero() {
        Err(FamilyError::BadParameter {
            name: name.into(),
            reason: "must be nonzero".into(),
        })
    } else {
        Ok(())
    }
}
