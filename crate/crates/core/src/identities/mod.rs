//! Registry of certified Neumann–Bessel identities.
//!
//! Each record pairs a truncated-series left side with a finite or
//! independently certified right side. Records are addressed by stable ids.

mod records;

use std::sync::OnceLock;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::bessel::EvalBudget;
use crate::error::{Error, Result};
use crate::series::Certified;

pub use records::{parseval_rhs, triangle_variant, TriangleVariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Int,
    Real,
    Angle,
}

/// A named parameter range plus the default sweep grid for it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub min: f64,
    pub max: f64,
    pub kind: ParamKind,
    #[serde(skip)]
    pub grid: Vec<f64>,
}

impl ParamSpec {
    pub fn new(name: &'static str, kind: ParamKind, min: f64, max: f64, grid: &[f64]) -> Self {
        Self {
            name,
            min,
            max,
            kind,
            grid: grid.to_vec(),
        }
    }

    fn check(&self, value: f64) -> std::result::Result<(), String> {
        if !value.is_finite() {
            return Err(format!("{} must be finite", self.name));
        }
        if value < self.min || value > self.max {
            return Err(format!("{} = {value} outside [{}, {}]", self.name, self.min, self.max));
        }
        if self.kind == ParamKind::Int && value.fract() != 0.0 {
            return Err(format!("{} must be an integer, got {value}", self.name));
        }
        Ok(())
    }
}

/// Named parameter values, kept in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamPoint {
    values: Vec<(String, f64)>,
}

impl ParamPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(&str, f64)]) -> Self {
        let mut pt = Self::new();
        for &(name, value) in pairs {
            pt.set(name, value);
        }
        pt
    }

    pub fn set(&mut self, name: &str, value: f64) {
        match self.values.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = value,
            None => self.values.push((name.to_string(), value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(n, v)| (n.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub(crate) fn real(&self, name: &str) -> Result<f64> {
        self.get(name)
            .ok_or_else(|| Error::Domain(format!("missing parameter {name}")))
    }

    pub(crate) fn int(&self, name: &str) -> Result<i64> {
        Ok(self.real(name)? as i64)
    }

    pub(crate) fn count(&self, name: &str) -> Result<u64> {
        let v = self.int(name)?;
        u64::try_from(v).map_err(|_| Error::Domain(format!("{name} must be non-negative")))
    }
}

impl Serialize for ParamPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.values.len()))?;
        for (name, value) in &self.values {
            map.serialize_entry(name, value)?;
        }
        map.end()
    }
}

pub type SideFn = fn(&ParamPoint, &EvalBudget) -> Result<Certified>;

/// Extra domain restriction beyond the per-parameter ranges; returns the
/// reason when a point is excluded.
pub type ConstraintFn = fn(&ParamPoint) -> Option<String>;

pub struct IdentityRecord {
    pub id: &'static str,
    pub title: &'static str,
    /// The identity written out as a formula.
    pub formula: &'static str,
    pub params: Vec<ParamSpec>,
    pub lhs: SideFn,
    pub rhs: SideFn,
    pub constraint: Option<ConstraintFn>,
}

impl IdentityRecord {
    /// Checks `pt` against the declared domain.
    pub fn check(&self, pt: &ParamPoint) -> Result<()> {
        let out = |reason: String| Error::OutOfDomain {
            name: self.id.to_string(),
            reason,
        };
        for (name, _) in pt.iter() {
            if !self.params.iter().any(|p| p.name == name) {
                return Err(out(format!("unknown parameter {name}")));
            }
        }
        for spec in &self.params {
            let value = pt
                .get(spec.name)
                .ok_or_else(|| out(format!("missing parameter {}", spec.name)))?;
            spec.check(value).map_err(out)?;
        }
        if let Some(reason) = self.constraint.and_then(|c| c(pt)) {
            return Err(out(reason));
        }
        Ok(())
    }

    pub fn admits(&self, pt: &ParamPoint) -> bool {
        self.check(pt).is_ok()
    }

    /// Default grid as a Cartesian product, last parameter varying fastest.
    /// Points failing the domain constraint are dropped; their count is the
    /// second component.
    pub fn default_points(&self) -> (Vec<ParamPoint>, usize) {
        let grids: Vec<(&str, &[f64])> = self.params.iter().map(|p| (p.name, p.grid.as_slice())).collect();
        let all = cartesian(&grids);
        let total = all.len();
        let kept: Vec<_> = all.into_iter().filter(|pt| self.admits(pt)).collect();
        let skipped = total - kept.len();
        (kept, skipped)
    }
}

/// All combinations of the given grids, last grid varying fastest.
pub fn cartesian(grids: &[(&str, &[f64])]) -> Vec<ParamPoint> {
    let mut points = vec![ParamPoint::new()];
    for &(name, grid) in grids {
        points = points
            .into_iter()
            .flat_map(|pt| {
                grid.iter().map(move |&v| {
                    let mut next = pt.clone();
                    next.set(name, v);
                    next
                })
            })
            .collect();
    }
    points
}

pub struct Registry {
    records: Vec<IdentityRecord>,
}

impl Registry {
    pub fn records(&self) -> &[IdentityRecord] {
        &self.records
    }

    pub fn get(&self, id: &str) -> Result<&IdentityRecord> {
        self.records
            .iter()
            .find(|r| r.id == id)
            .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
    }
}

pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| Registry {
        records: records::all(),
    })
}

/// `(id, title, formula)` for every record, in registry order.
pub fn list_identities() -> Vec<(&'static str, &'static str, &'static str)> {
    registry().records.iter().map(|r| (r.id, r.title, r.formula)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sides {
    pub lhs: Certified,
    pub rhs: Certified,
}

impl Sides {
    pub fn residual(&self) -> f64 {
        (self.lhs.value - self.rhs.value).norm()
    }

    /// Combined certified truncation error of both sides.
    pub fn tail(&self) -> f64 {
        self.lhs.tail + self.rhs.tail
    }
}

pub fn eval_sides(id: &str, pt: &ParamPoint, budget: &EvalBudget) -> Result<Sides> {
    let record = registry().get(id)?;
    record.check(pt)?;
    Ok(Sides {
        lhs: (record.lhs)(pt, budget)?,
        rhs: (record.rhs)(pt, budget)?,
    })
}

/// `|lhs − rhs|`.
pub fn residual(id: &str, pt: &ParamPoint, budget: &EvalBudget) -> Result<f64> {
    Ok(eval_sides(id, pt, budget)?.residual())
}

#[derive(Serialize)]
struct RegistryEntry<'a> {
    id: &'a str,
    title: &'a str,
    formula: &'a str,
    params: &'a [ParamSpec],
}

/// JSON array of `{id, title, formula, params: [{name, min, max, kind}]}`.
pub fn registry_json() -> String {
    let entries: Vec<_> = registry()
        .records
        .iter()
        .map(|r| RegistryEntry {
            id: r.id,
            title: r.title,
            formula: r.formula,
            params: &r.params,
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("registry serialises")
}
