//! Independent reference evaluators.
//!
//! Two algorithm families are kept apart from the recurrence in
//! [`crate::bessel`]: the periodic trapezoidal rule applied to Fourier-type
//! integrals, and the ascending power series summed in double-double
//! arithmetic.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::ddouble::DoubleDouble;
use crate::error::{Error, Result};
use crate::series::ComplexValue;
use crate::sum::ComplexSum;

/// Successive trapezoid estimates must agree to this before the rule is
/// considered converged.
pub const TRAPEZOID_TOLERANCE: f64 = 1e-13;

/// Hard cap on the number of trapezoid samples.
pub const MAX_SAMPLES: usize = 1 << 16;

/// A smooth 2π-periodic integrand and the sample count to start from.
///
/// The starting count should exceed the integrand's bandwidth; otherwise
/// aliasing can make two coarse estimates agree on a wrong value.
pub struct PeriodicIntegrand<'a> {
    f: Box<dyn Fn(f64) -> ComplexValue + 'a>,
    samples: usize,
}

impl<'a> PeriodicIntegrand<'a> {
    pub fn new(samples: usize, f: impl Fn(f64) -> ComplexValue + 'a) -> Result<Self> {
        if samples < 16 || !samples.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "trapezoid needs an even sample count of at least 16, got {samples}"
            )));
        }
        Ok(Self {
            f: Box::new(f),
            samples,
        })
    }

    /// Starting sample count for an integrand whose Fourier content lies
    /// within `|frequency| ≤ bandwidth`.
    pub fn samples_for_bandwidth(bandwidth: f64) -> usize {
        let wanted = (2.0 * bandwidth.abs() + 32.0).ceil() as usize;
        wanted.next_power_of_two().clamp(16, MAX_SAMPLES)
    }
}

/// `(1/2π) ∫_0^{2π} g(θ) dθ` by the trapezoidal rule, doubling the sample
/// count until successive estimates differ by less than
/// [`TRAPEZOID_TOLERANCE`].
pub fn periodic_integral(g: &PeriodicIntegrand<'_>) -> Result<ComplexValue> {
    let mut samples = g.samples;
    let mut sum = ComplexSum::new();
    for j in 0..samples {
        sum.add((g.f)(2.0 * PI * j as f64 / samples as f64));
    }
    let mut estimate = sum.value() / samples as f64;

    while samples < MAX_SAMPLES {
        // The refined rule reuses the old nodes and adds the midpoints.
        let h = 2.0 * PI / samples as f64;
        for j in 0..samples {
            sum.add((g.f)((j as f64 + 0.5) * h));
        }
        samples *= 2;
        let refined = sum.value() / samples as f64;
        if (refined - estimate).norm() < TRAPEZOID_TOLERANCE {
            return Ok(refined);
        }
        estimate = refined;
    }
    Err(Error::Quadrature { samples })
}

/// `J_m(z)` from its Fourier integral `(1/2π)∫ cos(z sin θ - mθ) dθ`.
pub fn bessel_fourier_oracle(m: i64, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {z}")));
    }
    let samples = PeriodicIntegrand::samples_for_bandwidth(z.abs() + m.unsigned_abs() as f64);
    let g = PeriodicIntegrand::new(samples, |theta| {
        Complex64::new((z * theta.sin() - m as f64 * theta).cos(), 0.0)
    })?;
    Ok(periodic_integral(&g)?.re)
}

/// `J_m(z)` from the ascending series `Σ_j (-1)^j (z/2)^{2j+m} / (j!(j+m)!)`,
/// summed in double-double arithmetic so that the cancellation between
/// large terms (up to ~1e12 at `z = 30`) does not leak into the result.
pub fn bessel_series_oracle(m: u32, z: f64) -> Result<f64> {
    if !z.is_finite() || z.abs() > 50.0 || m > 200 {
        return Err(Error::Range(format!(
            "series oracle covers |z| ≤ 50 and m ≤ 200, got m = {m}, z = {z}"
        )));
    }
    if z == 0.0 {
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }
    let half = z / 2.0;
    let mut term = DoubleDouble::ONE;
    for i in 1..=m {
        term = term.mul_f64(half).div_f64(i as f64);
    }
    let step = -DoubleDouble::product(half, half);
    let mut partial = term;
    for j in 1..2000u32 {
        let denom = (j as f64) * ((j + m) as f64);
        term = (term * step).div_f64(denom);
        partial = partial + term;
        let decaying = half * half < denom;
        let small = term.abs().hi() <= 1e-17 * partial.abs().hi() || term.abs().hi() < 1e-34;
        if decaying && small {
            return Ok(partial.to_f64());
        }
        if !term.hi().is_finite() {
            break;
        }
    }
    Err(Error::Range(format!(
        "ascending series did not settle for m = {m}, z = {z}"
    )))
}

/// Root of `f` in `[a, b]` by bisection; `f(a)` and `f(b)` must differ in sign.
pub fn bisect_root(mut f: impl FnMut(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Domain(format!("no sign change on [{a}, {b}]")));
    }
    while (b - a).abs() > tol {
        let mid = 0.5 * (a + b);
        if mid <= a.min(b) || mid >= a.max(b) {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Finite sum of periodic integrals on the right of the product identity:
///
/// `(1/n) Σ_{ℓ<n} e^{-ip·2πℓ/n} (1/2π)∫ exp(i z sin(y + 2t + 2πℓ/n) + i z' sin y - i(p+q)y) dy`.
pub fn product_rhs_integral(n: u64, p: i64, q: i64, z: f64, zp: f64, t: f64) -> Result<ComplexValue> {
    if n == 0 {
        return Err(Error::Domain("fold order n must be at least 1".into()));
    }
    if !(z.is_finite() && zp.is_finite() && t.is_finite()) {
        return Err(Error::Domain("arguments must be finite".into()));
    }
    let nf = n as f64;
    let order = (p + q) as f64;
    let samples = PeriodicIntegrand::samples_for_bandwidth(z.abs() + zp.abs() + order.abs());
    let mut acc = ComplexSum::new();
    for l in 0..n {
        let shift = 2.0 * t + 2.0 * PI * l as f64 / nf;
        let g = PeriodicIntegrand::new(samples, |y| {
            Complex64::from_polar(1.0, z * (y + shift).sin() + zp * y.sin() - order * y)
        })?;
        let weight = Complex64::from_polar(1.0, -(p as f64) * 2.0 * PI * l as f64 / nf);
        acc.add(weight * periodic_integral(&g)?);
    }
    Ok(acc.value() / nf)
}
