//! Residue-class Neumann series `Σ_k w(k) J_{kn+p}(z) e^{ikny}` and the
//! finite exponential sum they equal.
//!
//! Every truncated sum is returned as a [`Certified`] value: the partial sum
//! plus a rigorous bound on the discarded tail.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bessel::{self, residue_class_tail, row_lookup, EvalBudget, TailSides, WeightEnvelope};
use crate::error::{Error, Result};
use crate::sum::ComplexSum;

pub type ComplexValue = Complex64;

/// Fold order `n`, residue `p`, argument `z` and phase angle `y` of a
/// residue-class series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSpec {
    pub n: u64,
    pub p: i64,
    pub z: f64,
    pub y: f64,
}

impl SeriesSpec {
    pub fn new(n: u64, p: i64, z: f64, y: f64) -> Result<Self> {
        let spec = Self { n, p, z, y };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain("fold order n must be at least 1".into()));
        }
        if !self.z.is_finite() || !self.y.is_finite() {
            return Err(Error::Domain("series argument and phase must be finite".into()));
        }
        Ok(())
    }

    /// Splits `p = p0 + shift·n` with `p0 ∈ [0, n)`. The series obeys
    /// `S(p) = e^{-i·shift·n·y} S(p0)`.
    pub fn canonical(&self) -> (Self, i64) {
        let n = self.n as i64;
        let p0 = self.p.rem_euclid(n);
        let shift = (self.p - p0) / n;
        (Self { p: p0, ..*self }, shift)
    }
}

/// A truncated series value together with its certified tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certified {
    pub value: ComplexValue,
    pub tail: f64,
    /// Number of leading indices `k` summed (per side).
    pub terms: u64,
}

impl Certified {
    pub fn exact(value: ComplexValue) -> Self {
        Self {
            value,
            tail: 0.0,
            terms: 0,
        }
    }

    pub fn real(value: f64) -> Self {
        Self::exact(Complex64::new(value, 0.0))
    }

    pub fn scaled(self, factor: ComplexValue) -> Self {
        Self {
            value: self.value * factor,
            tail: self.tail * factor.norm(),
            terms: self.terms,
        }
    }
}

/// Which summation indices a coefficient rule covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// All `k ∈ ℤ`.
    TwoSided,
    /// `k ≥ from`.
    From(u64),
}

type Weight<'a> = Box<dyn Fn(i64) -> ComplexValue + Send + Sync + 'a>;

/// Per-index weights `w(k)` with a declared polynomial envelope
/// `|w(k)| ≤ scale · max(1, |k|)^degree`.
pub struct CoefficientRule<'a> {
    weight: Weight<'a>,
    envelope: WeightEnvelope,
    support: Support,
}

impl<'a> CoefficientRule<'a> {
    pub fn new(
        support: Support,
        degree: u32,
        scale: f64,
        weight: impl Fn(i64) -> ComplexValue + Send + Sync + 'a,
    ) -> Self {
        Self {
            weight: Box::new(weight),
            envelope: WeightEnvelope { degree, scale },
            support,
        }
    }

    /// Real weights over `k ≥ from`.
    pub fn one_sided(from: u64, degree: u32, scale: f64, weight: impl Fn(i64) -> f64 + Send + Sync + 'a) -> Self {
        Self::new(Support::From(from), degree, scale, move |k| {
            Complex64::new(weight(k), 0.0)
        })
    }

    pub fn unit() -> Self {
        Self::new(Support::TwoSided, 0, 1.0, |_| Complex64::new(1.0, 0.0))
    }

    pub fn degree(&self) -> u32 {
        self.envelope.degree
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn weight(&self, k: i64) -> ComplexValue {
        (self.weight)(k)
    }

    fn sides(&self) -> TailSides {
        match self.support {
            Support::TwoSided => TailSides::Both,
            Support::From(_) => TailSides::Upper,
        }
    }

    fn first_index(&self) -> u64 {
        match self.support {
            Support::TwoSided => 0,
            Support::From(k0) => k0,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.envelope.scale >= 0.0 && self.envelope.scale.is_finite()) {
            return Err(Error::Domain(
                "weight envelope scale must be finite and non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Smallest truncation `K` (beyond the first summed index) whose tail bound
/// is within budget.
fn certified_truncation(
    first: u64,
    budget: &EvalBudget,
    mut bound: impl FnMut(u64) -> Result<f64>,
) -> Result<(u64, f64)> {
    let mut achieved = f64::INFINITY;
    for k_start in first.max(1)..=first + budget.max_terms as u64 {
        match bound(k_start) {
            Ok(b) if b <= budget.eps => return Ok((k_start, b)),
            Ok(b) => achieved = b,
            Err(Error::DivergentBound { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::Budget {
        terms: budget.max_terms,
        achieved,
    })
}

/// Summation indices below the truncation point, ascending in `|k|`.
fn indices(support: Support, k_end: u64) -> impl Iterator<Item = i64> {
    let (two_sided, first) = match support {
        Support::TwoSided => (true, 0),
        Support::From(k0) => (false, k0),
    };
    (first..k_end).flat_map(move |k| {
        let k = k as i64;
        let mirror = if two_sided && k != 0 { Some(-k) } else { None };
        std::iter::once(k).chain(mirror)
    })
}

fn phase(angle: f64) -> ComplexValue {
    Complex64::from_polar(1.0, angle)
}

/// `Σ_k w(k) J_{kn+p}(z) e^{ikny}` with the tail certified to `budget.eps`.
pub fn weighted_series(spec: &SeriesSpec, w: &CoefficientRule<'_>, budget: &EvalBudget) -> Result<Certified> {
    spec.validate()?;
    w.validate()?;
    let n = spec.n;
    let (k_end, tail) = certified_truncation(w.first_index(), budget, |k| {
        residue_class_tail(n, spec.p, spec.z, k, w.sides(), w.envelope)
    })?;

    let max_order = indices(w.support, k_end)
        .map(|k| (k * n as i64 + spec.p).unsigned_abs())
        .max()
        .unwrap_or(0);
    let row = bessel::bessel_row(max_order as usize, spec.z)?;

    let mut acc = ComplexSum::new();
    for k in indices(w.support, k_end) {
        let order = k * n as i64 + spec.p;
        let term = w.weight(k) * row_lookup(&row, order) * phase((k as f64) * (n as f64) * spec.y);
        acc.add(term);
    }
    Ok(Certified {
        value: acc.value(),
        tail,
        terms: k_end,
    })
}

/// Left side of the master formula: `Σ_{k∈ℤ} J_{kn+p}(z) e^{ikny}`.
///
/// The residue is first reduced to `[0, n)` and the index shift is restored
/// as the exact phase `e^{-i·shift·n·y}`.
pub fn master_lhs(spec: &SeriesSpec, budget: &EvalBudget) -> Result<Certified> {
    spec.validate()?;
    let (canonical, shift) = spec.canonical();
    let sum = weighted_series(&canonical, &CoefficientRule::unit(), budget)?;
    if shift == 0 {
        Ok(sum)
    } else {
        Ok(sum.scaled(phase(-(shift as f64) * (spec.n as f64) * spec.y)))
    }
}

/// Right side of the master formula:
/// `(1/n) Σ_{ℓ<n} exp(i z sin(y + 2πℓ/n) - i p (y + 2πℓ/n))`.
pub fn master_rhs(spec: &SeriesSpec) -> Result<ComplexValue> {
    spec.validate()?;
    let n = spec.n as f64;
    let mut acc = ComplexSum::new();
    for l in 0..spec.n {
        let angle = spec.y + 2.0 * PI * l as f64 / n;
        acc.add(phase(spec.z * angle.sin() - spec.p as f64 * angle));
    }
    Ok(acc.value() / n)
}

/// One Bessel factor `J_{offset + sign·k·n}(z)` of a product series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselFactor {
    pub offset: i64,
    pub reversed: bool,
    pub z: f64,
}

impl BesselFactor {
    pub fn forward(offset: i64, z: f64) -> Self {
        Self {
            offset,
            reversed: false,
            z,
        }
    }

    pub fn reversed(offset: i64, z: f64) -> Self {
        Self {
            offset,
            reversed: true,
            z,
        }
    }

    fn order(&self, k: i64, n: u64) -> i64 {
        let step = k * n as i64;
        if self.reversed {
            self.offset - step
        } else {
            self.offset + step
        }
    }

    /// Offset as seen by the tail machinery, which walks `k·n + p`.
    fn tail_offset(&self) -> i64 {
        if self.reversed {
            -self.offset
        } else {
            self.offset
        }
    }
}

/// `Σ_k w(k) J_{a ± kn}(z1) J_{b ± kn}(z2)`.
///
/// The tail is bounded through either factor (`|J_m(x)| ≤ 1` for real `x`);
/// the smaller of the two bounds is kept.
pub fn product_series(
    n: u64,
    first: BesselFactor,
    second: BesselFactor,
    w: &CoefficientRule<'_>,
    budget: &EvalBudget,
) -> Result<Certified> {
    if n == 0 {
        return Err(Error::Domain("fold order n must be at least 1".into()));
    }
    if !first.z.is_finite() || !second.z.is_finite() {
        return Err(Error::Domain("Bessel arguments must be finite".into()));
    }
    w.validate()?;
    let (k_end, tail) = certified_truncation(w.first_index(), budget, |k| {
        let a = residue_class_tail(n, first.tail_offset(), first.z, k, w.sides(), w.envelope);
        let b = residue_class_tail(n, second.tail_offset(), second.z, k, w.sides(), w.envelope);
        match (a, b) {
            (Ok(a), Ok(b)) => Ok(a.min(b)),
            (Ok(a), Err(_)) => Ok(a),
            (Err(_), Ok(b)) => Ok(b),
            (Err(e), Err(_)) => Err(e),
        }
    })?;

    let max_abs = |f: &BesselFactor| {
        indices(w.support, k_end)
            .map(|k| f.order(k, n).unsigned_abs())
            .max()
            .unwrap_or(0) as usize
    };
    let row_first = bessel::bessel_row(max_abs(&first), first.z)?;
    let row_second = bessel::bessel_row(max_abs(&second), second.z)?;

    let mut acc = ComplexSum::new();
    for k in indices(w.support, k_end) {
        let a = row_lookup(&row_first, first.order(k, n));
        let b = row_lookup(&row_second, second.order(k, n));
        acc.add(w.weight(k) * (a * b));
    }
    Ok(Certified {
        value: acc.value(),
        tail,
        terms: k_end,
    })
}
