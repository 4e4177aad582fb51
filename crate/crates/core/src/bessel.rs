//! Integer-order Bessel functions of the first kind and certified tail bounds
//! for series over a residue class of orders.
//!
//! Values come from Miller's backward recurrence normalised by
//! `J_0 + 2 Σ_{k≥1} J_{2k} = 1`. Tails are bounded with
//! `|J_m(z)| ≤ (|z|/2)^m / m!` (valid for real `z`, integer `m ≥ 0`) and a
//! geometric closure once successive-term ratios drop below one half.

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Extra orders above `max(m_max, ceil|z|)` where the backward recurrence starts.
pub const MILLER_MARGIN: usize = 40;

/// Below this argument the ascending series is exact to double precision
/// after its leading term, and the recurrence coefficients `2k/z` overflow.
const TINY_ARGUMENT: f64 = 1e-30;

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_FACTOR: f64 = 1e-250;

/// Ratio the geometric tail closure must stay under.
const MAX_TAIL_RATIO: f64 = 0.5;

/// Relative inflation applied to computed bounds to cover rounding in the
/// bound arithmetic itself.
const BOUND_INFLATION: f64 = 1.0 + 1e-10;

/// A signed integer Bessel order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BesselOrder(pub i64);

impl BesselOrder {
    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }

    /// Sign picked up by `J_m` when `m` is reflected to `|m|`: `(-1)^m` for
    /// negative orders.
    pub fn reflection_sign(self) -> f64 {
        if self.0 < 0 && self.0 % 2 != 0 {
            -1.0
        } else {
            1.0
        }
    }
}

impl From<i64> for BesselOrder {
    fn from(m: i64) -> Self {
        Self(m)
    }
}

/// Absolute tolerance and term cap shared by every truncated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalBudget {
    pub eps: f64,
    pub max_terms: usize,
}

impl EvalBudget {
    pub const DEFAULT_EPS: f64 = 1e-12;
    pub const DEFAULT_MAX_TERMS: usize = 10_000;

    pub fn new(eps: f64, max_terms: usize) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Config(format!("eps must be positive and finite, got {eps}")));
        }
        if max_terms == 0 {
            return Err(Error::Config("max_terms must be at least 1".into()));
        }
        Ok(Self { eps, max_terms })
    }

    pub fn with_eps(eps: f64) -> Result<Self> {
        Self::new(eps, Self::DEFAULT_MAX_TERMS)
    }
}

impl Default for EvalBudget {
    fn default() -> Self {
        Self {
            eps: Self::DEFAULT_EPS,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }
}

fn check_argument(z: f64) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Bessel argument must be finite, got {z}")))
    }
}

/// `J_m(z)` for every `m` in `0..=m_max`.
pub fn bessel_row(m_max: usize, z: f64) -> Result<Vec<f64>> {
    check_argument(z)?;
    let mut row = vec![0.0; m_max + 1];
    let az = z.abs();
    if az == 0.0 {
        row[0] = 1.0;
        return Ok(row);
    }

    if az < TINY_ARGUMENT {
        let half = az / 2.0;
        let mut term = 1.0;
        for (m, slot) in row.iter_mut().enumerate() {
            *slot = term;
            term *= half / (m + 1) as f64;
        }
    } else {
        miller_backward(&mut row, az);
    }

    if z < 0.0 {
        for slot in row.iter_mut().skip(1).step_by(2) {
            *slot = -*slot;
        }
    }
    Ok(row)
}

/// Backward recurrence `f_{k-1} = (2k/z) f_k - f_{k+1}` from a high trial
/// order, normalised at the end. `z > 0`.
fn miller_backward(row: &mut [f64], z: f64) {
    let m_max = row.len() - 1;
    let start = m_max.max(z.ceil() as usize) + MILLER_MARGIN;
    let two_over_z = 2.0 / z;

    let mut above = 0.0;
    let mut current = 1e-30;
    let mut norm = CompensatedSum::new();
    if start.is_multiple_of(2) {
        norm.add(2.0 * current);
    }

    for k in (1..=start).rev() {
        let below = k as f64 * two_over_z * current - above;
        above = current;
        current = below;
        let m = k - 1;
        if m <= m_max {
            row[m] = current;
        }
        if m == 0 {
            norm.add(current);
        } else if m % 2 == 0 {
            norm.add(2.0 * current);
        }
        if current.abs() > RESCALE_ABOVE {
            current *= RESCALE_FACTOR;
            above *= RESCALE_FACTOR;
            norm.scale(RESCALE_FACTOR);
            for slot in row[m.min(m_max)..].iter_mut() {
                *slot *= RESCALE_FACTOR;
            }
        }
    }

    let scale = norm.value();
    for slot in row.iter_mut() {
        *slot /= scale;
    }
}

/// `J_m(z)` for a signed integer order.
///
/// Negative orders are evaluated at `|m|` and multiplied by `(-1)^m`, so the
/// reflection relation holds bit for bit.
pub fn bessel_j(m: i64, z: f64) -> Result<f64> {
    let order = BesselOrder(m);
    let m_abs = order.abs() as usize;
    let row = bessel_row(m_abs, z)?;
    Ok(order.reflection_sign() * row[m_abs])
}

/// Signed-order lookup into a row produced by [`bessel_row`].
pub(crate) fn row_lookup(row: &[f64], m: i64) -> f64 {
    let order = BesselOrder(m);
    order.reflection_sign() * row[order.abs() as usize]
}

fn ln_factorial(m: u64) -> f64 {
    (2..=m).map(|i| (i as f64).ln()).sum()
}

/// `(|z|/2)^m / m!`, the majorant of `|J_m(z)|`.
pub fn nielsen_majorant(m: u64, z: f64) -> f64 {
    let half = z.abs() / 2.0;
    if half == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    (m as f64 * half.ln() - ln_factorial(m)).exp()
}

/// Which indices of a residue-class series lie in the tail past `k_start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSides {
    /// `|k| ≥ k_start`.
    Both,
    /// `k ≥ k_start` only.
    Upper,
}

/// Polynomial envelope `|w(k)| ≤ scale · max(1, |k|)^degree` of series weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightEnvelope {
    pub degree: u32,
    pub scale: f64,
}

impl WeightEnvelope {
    pub const UNIT: Self = Self { degree: 0, scale: 1.0 };
}

/// Bound on `Σ_{j≥0} w_env(k0+j) (|z|/2)^{m0+jn}/(m0+jn)!` by first term and
/// geometric closure; `None` when the closure ratio is not below one half.
fn one_sided_tail(m0: u64, step: u64, z: f64, k0: u64, env: WeightEnvelope) -> Option<f64> {
    let first = nielsen_majorant(m0, z);
    if first == 0.0 {
        return Some(0.0);
    }
    let half = z.abs() / 2.0;
    let mut ratio = 1.0;
    for i in 1..=step {
        ratio *= half / (m0 + i) as f64;
    }
    let k = k0.max(1) as f64;
    ratio *= ((k + 1.0) / k).powi(env.degree as i32);
    if ratio >= MAX_TAIL_RATIO {
        return None;
    }
    let weight = env.scale * k.powi(env.degree as i32);
    Some(BOUND_INFLATION * weight * first / (1.0 - ratio))
}

/// Tail bound for `Σ w(k) J_{kn+p}(z)` over the indices past `k_start`.
pub(crate) fn residue_class_tail(
    n: u64,
    p: i64,
    z: f64,
    k_start: u64,
    sides: TailSides,
    env: WeightEnvelope,
) -> Result<f64> {
    let base = (k_start * n) as i64;
    let upper_first = base + p;
    let lower_first = base - p;
    let divergent = Error::DivergentBound { k_start };
    if upper_first < 0 || (sides == TailSides::Both && lower_first < 0) {
        return Err(divergent);
    }
    let mut total = one_sided_tail(upper_first as u64, n, z, k_start, env).ok_or(divergent.clone())?;
    if sides == TailSides::Both {
        total += one_sided_tail(lower_first as u64, n, z, k_start, env).ok_or(divergent)?;
    }
    Ok(total)
}

/// Rigorous upper bound on `Σ_{|k| ≥ k_start} |J_{kn+p}(z)|`.
pub fn tail_bound(n: u64, p: i64, z: f64, k_start: u64) -> Result<f64> {
    check_argument(z)?;
    if n == 0 {
        return Err(Error::Domain("fold order n must be at least 1".into()));
    }
    residue_class_tail(n, p, z, k_start, TailSides::Both, WeightEnvelope::UNIT)
}

/// Smallest `k_start` whose tail bound drops under `eps`, searched up to
/// `max_terms`.
pub(crate) fn truncation_index_with(
    max_terms: usize,
    eps: f64,
    mut bound: impl FnMut(u64) -> Result<f64>,
) -> Result<u64> {
    let mut achieved = f64::INFINITY;
    for k_start in 1..=max_terms as u64 {
        match bound(k_start) {
            Ok(b) if b <= eps => return Ok(k_start),
            Ok(b) => achieved = b,
            Err(Error::DivergentBound { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::Budget {
        terms: max_terms,
        achieved,
    })
}

/// Smallest `k_start ≥ 1` with `tail_bound(n, p, z, k_start) ≤ eps`.
pub fn truncation_index(n: u64, p: i64, z: f64, eps: f64) -> Result<u64> {
    truncation_index_budget(n, p, z, &EvalBudget::new(eps, EvalBudget::DEFAULT_MAX_TERMS)?)
}

pub fn truncation_index_budget(n: u64, p: i64, z: f64, budget: &EvalBudget) -> Result<u64> {
    check_argument(z)?;
    if n == 0 {
        return Err(Error::Domain("fold order n must be at least 1".into()));
    }
    truncation_index_with(budget.max_terms, budget.eps, |k| tail_bound(n, p, z, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(-3, 1.5).unwrap(), -bessel_j(3, 1.5).unwrap());
        assert_eq!(bessel_row(0, 0.0).unwrap(), vec![1.0]);
    }

    #[test]
    fn non_finite_argument_is_rejected() {
        assert!(matches!(bessel_j(1, f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(bessel_row(4, f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn parity_is_exact_on_grid() {
        for &z in &[0.1, 1.0, 5.0, 20.0] {
            for m in -50i64..=50 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(bessel_j(-m, z).unwrap(), sign * bessel_j(m, z).unwrap());
            }
        }
    }

    #[test]
    fn negative_argument_reflects() {
        for m in 0..10 {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(bessel_j(m, -3.3).unwrap(), sign * bessel_j(m, 3.3).unwrap());
        }
    }

    #[test]
    fn row_satisfies_three_term_recurrence() {
        let z = 3.0;
        let row = bessel_row(4, z).unwrap();
        for m in 1..4 {
            let lhs = row[m - 1] + row[m + 1];
            let rhs = 2.0 * m as f64 / z * row[m];
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn recurrence_residual_on_grid() {
        for &z in &[0.1, 1.0, 5.0, 20.0] {
            for m in -49i64..=49 {
                let (a, b, c) = (
                    bessel_j(m - 1, z).unwrap(),
                    bessel_j(m, z).unwrap(),
                    bessel_j(m + 1, z).unwrap(),
                );
                let res = (a + c - 2.0 * m as f64 / z * b).abs();
                assert!(res <= 1e-11 * b.abs().max(1.0), "m={m} z={z} res={res}");
            }
        }
    }

    #[test]
    fn sum_of_squares_normalisation() {
        let row = bessel_row(60, 10.0).unwrap();
        let s: CompensatedSum = std::iter::once(row[0] * row[0])
            .chain(row[1..].iter().map(|j| 2.0 * j * j))
            .collect();
        assert!((s.value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalisation_with_certified_truncation() {
        for &z in &[0.5, 3.0, 12.0, 30.0] {
            let k = truncation_index(1, 0, z, 1e-12).unwrap() as usize;
            let row = bessel_row(k, z).unwrap();
            let s: CompensatedSum = std::iter::once(row[0] * row[0])
                .chain(row[1..=k].iter().map(|j| 2.0 * j * j))
                .collect();
            assert!((s.value() - 1.0).abs() <= 1e-11, "z={z}");
        }
    }

    #[test]
    fn tiny_arguments_use_leading_term() {
        let z = 1e-40;
        assert_eq!(bessel_j(0, z).unwrap(), 1.0);
        assert!((bessel_j(1, z).unwrap() - 5e-41).abs() < 1e-55);
        let z = 1e-20;
        assert!((bessel_j(1, z).unwrap() / 5e-21 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn high_orders_and_large_arguments_stay_finite() {
        let row = bessel_row(200, 50.0).unwrap();
        assert!(row.iter().all(|v| v.is_finite()));
        assert!(row[200].abs() < 1e-60);
    }

    fn direct_tail(n: i64, p: i64, z: f64, k_start: i64) -> f64 {
        (k_start..=50)
            .map(|k| bessel_j(k * n + p, z).unwrap().abs() + bessel_j(-k * n + p, z).unwrap().abs())
            .sum()
    }

    #[test]
    fn tail_bound_dominates_direct_tail() {
        let b = tail_bound(4, 0, 1.0, 3).unwrap();
        assert!(b >= direct_tail(4, 0, 1.0, 3));
        assert!(b <= 1e-9);

        let b = tail_bound(6, 3, 20.0, 2).unwrap();
        assert!(b.is_finite() && b > 0.0);
        assert!(b >= direct_tail(6, 3, 20.0, 2));
    }

    #[test]
    fn tail_bound_vanishes_at_origin() {
        assert!(tail_bound(1, 0, 0.0, 1).unwrap() <= 1e-300);
    }

    #[test]
    fn tail_bound_signals_small_k_start() {
        assert_eq!(tail_bound(1, 0, 30.0, 1), Err(Error::DivergentBound { k_start: 1 }));
        assert!(tail_bound(2, 5, 1.0, 1).is_err());
    }

    #[test]
    fn truncation_index_examples() {
        assert_eq!(truncation_index(4, 0, 0.0, 1e-12).unwrap(), 1);

        let k = truncation_index(1, 0, 10.0, 1e-12).unwrap();
        assert!(tail_bound(1, 0, 10.0, k).unwrap() <= 1e-12);
        assert!(k == 1 || tail_bound(1, 0, 10.0, k - 1).map_or(true, |b| b > 1e-12));

        let k = truncation_index(2, 1, 30.0, 1e-10).unwrap();
        assert!(2 * k + 1 > 30);
        let bounds: Vec<f64> = (k..k + 10).map(|k| tail_bound(2, 1, 30.0, k).unwrap()).collect();
        assert!(bounds.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn truncation_index_respects_budget() {
        let budget = EvalBudget::new(1e-12, 3).unwrap();
        assert!(matches!(
            truncation_index_budget(1, 0, 40.0, &budget),
            Err(Error::Budget { terms: 3, .. })
        ));
    }

    #[test]
    fn budget_validation() {
        assert!(EvalBudget::new(0.0, 10).is_err());
        assert!(EvalBudget::new(1e-3, 0).is_err());
        assert!(EvalBudget::new(f64::NAN, 10).is_err());
    }
}
