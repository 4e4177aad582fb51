use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{IdentityRecord, ParamKind, ParamPoint, ParamSpec};
use crate::bessel::{bessel_j, EvalBudget};
use crate::ddouble::DoubleDouble;
use crate::error::{Error, Result};
use crate::polygon::{
    decagon_cartesian, f_n_polar, special_mode, square_ground, triangle_ground, PlanePoint, PolygonConstants,
    TriangleSigns,
};
use crate::quadrature::product_rhs_integral;
use crate::series::{
    master_lhs, master_rhs, product_series, weighted_series, BesselFactor, Certified, CoefficientRule, SeriesSpec,
    Support,
};
use crate::sum::CompensatedSum;

const Z_GRID: [f64; 8] = [0.0, 0.5, 1.0, 2.5, 5.0, 10.0, 15.0, 20.0];
const ANGLE_GRID: [f64; 8] = [0.0, 0.3, FRAC_PI_4, 1.1, FRAC_PI_2, 1.9, 2.6, PI];
const RADIUS_GRID: [f64; 8] = [0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 7.0];
const DAMPING_GRID: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
const Z_MAX: f64 = 25.0;
const ANGLE_MAX: f64 = 4.0 * PI;

fn z_param(name: &'static str) -> ParamSpec {
    ParamSpec::new(name, ParamKind::Real, -Z_MAX, Z_MAX, &Z_GRID)
}

fn angle(name: &'static str) -> ParamSpec {
    ParamSpec::new(name, ParamKind::Angle, -ANGLE_MAX, ANGLE_MAX, &ANGLE_GRID)
}

fn radius(name: &'static str) -> ParamSpec {
    ParamSpec::new(name, ParamKind::Real, 0.0, 8.0, &RADIUS_GRID)
}

fn int(name: &'static str, min: i64, max: i64, grid: &[f64]) -> ParamSpec {
    ParamSpec::new(name, ParamKind::Int, min as f64, max as f64, grid)
}

fn fold_grid(max: u32) -> Vec<f64> {
    (1..=max).map(f64::from).collect()
}

fn real(v: f64) -> Result<Certified> {
    Ok(Certified::real(v))
}

fn cis(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// `i^m` without rounding.
fn i_pow(m: i64) -> Complex64 {
    match m.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn alternating(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `Σ_{k ≥ from} w(k) J_{kn+p}(z)` for real weights.
fn one_sided(
    n: u64,
    p: i64,
    z: f64,
    from: u64,
    (degree, scale): (u32, f64),
    w: impl Fn(i64) -> f64 + Send + Sync,
    b: &EvalBudget,
) -> Result<Certified> {
    let rule = CoefficientRule::one_sided(from, degree, scale, w);
    weighted_series(&SeriesSpec::new(n, p, z, 0.0)?, &rule, b)
}

/// `J_0(z) + 2 Σ_{k≥1} c(k) J_{kn}(z)` with `|c(k)| ≤ bound`.
fn cosine_series(
    n: u64,
    z: f64,
    bound: f64,
    c: impl Fn(i64) -> f64 + Send + Sync,
    b: &EvalBudget,
) -> Result<Certified> {
    one_sided(
        n,
        0,
        z,
        0,
        (0, 2.0 * bound.max(0.5)),
        move |k| if k == 0 { 1.0 } else { 2.0 * c(k) },
        b,
    )
}

fn master_spec(pt: &ParamPoint) -> Result<SeriesSpec> {
    SeriesSpec::new(pt.count("n")?, pt.int("p")?, pt.real("z")?, pt.real("y")?)
}

fn master_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    master_lhs(&master_spec(pt)?, b)
}

fn master_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    Ok(Certified::exact(master_rhs(&master_spec(pt)?)?))
}

fn polar(pt: &ParamPoint) -> Result<(f64, f64)> {
    Ok((pt.real("r")?, pt.real("theta")?))
}

fn square_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (r, theta) = polar(pt)?;
    cosine_series(
        4,
        (2.0 * PI).sqrt() * r,
        1.0,
        move |k| (4.0 * k as f64 * theta).cos(),
        b,
    )
}

fn square_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (r, theta) = polar(pt)?;
    real(square_ground(PlanePoint::from_polar(r, theta)))
}

/// Triangle weight `cos(kπ/2 − π/6)/cos(π/6)` with the multiple of π/2 reduced exactly.
fn triangle_weight(k: i64) -> f64 {
    (k.rem_euclid(4) as f64 * FRAC_PI_2 - PI / 6.0).cos() / (PI / 6.0).cos()
}

fn triangle_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (r, theta) = polar(pt)?;
    let lambda = PolygonConstants::area_pi(3)?
        .lambda
        .expect("triangle eigenvalue is known");
    let bound = 1.0 / (PI / 6.0).cos();
    cosine_series(
        3,
        lambda * r,
        bound,
        move |k| triangle_weight(k) * (3.0 * k as f64 * theta).cos(),
        b,
    )
}

fn triangle_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (r, theta) = polar(pt)?;
    real(triangle_ground(
        PlanePoint::from_polar(r, theta),
        triangle_variant().signs,
    ))
}

/// Outcome of certifying the sign choices of the three-sine triangle form
/// against its Neumann series.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleVariant {
    pub signs: TriangleSigns,
    pub max_residual: f64,
    /// Largest residual of every candidate, in [`TriangleSigns::ALL`] order.
    pub candidates: Vec<(TriangleSigns, f64)>,
}

pub fn triangle_variant() -> &'static TriangleVariant {
    static VARIANT: OnceLock<TriangleVariant> = OnceLock::new();
    VARIANT.get_or_init(|| {
        let b = EvalBudget::default();
        let probes: Vec<_> = [0.5, 1.0, 2.0, 3.0]
            .iter()
            .flat_map(|&r| [0.3, 1.1, 2.6, 4.0].map(|t| (r, t)))
            .map(|(r, t)| {
                let lhs = triangle_l(&ParamPoint::from_pairs(&[("r", r), ("theta", t)]), &b)
                    .expect("triangle series converges on the probe set");
                (PlanePoint::from_polar(r, t), lhs.value.re)
            })
            .collect();
        let candidates: Vec<_> = TriangleSigns::ALL
            .iter()
            .map(|&signs| {
                let worst = probes
                    .iter()
                    .map(|&(p, lhs)| (triangle_ground(p, signs) - lhs).abs())
                    .fold(0.0, f64::max);
                (signs, worst)
            })
            .collect();
        let &(signs, max_residual) = candidates
            .iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("four candidates");
        TriangleVariant {
            signs,
            max_residual,
            candidates,
        }
    })
}

fn fn_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let n = pt.count("n")? as u32;
    let (r, theta) = polar(pt)?;
    crate::polygon::f_n_series(n, PlanePoint::from_polar(r, theta), b)
}

fn fn_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (r, theta) = polar(pt)?;
    real(f_n_polar(pt.count("n")? as u32, r, theta))
}

fn kagome_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (r, theta) = polar(pt)?;
    cosine_series(6, r, 1.0, move |k| alternating(k) * (6.0 * k as f64 * theta).cos(), b)
}

fn kagome_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (r, theta) = polar(pt)?;
    let p = PlanePoint::from_polar(r, theta);
    real(p.x.cos() / 3.0 + 2.0 / 3.0 * (p.x / 2.0).cos() * (3f64.sqrt() / 2.0 * p.y).cos())
}

fn z_alpha(pt: &ParamPoint) -> Result<(f64, f64)> {
    Ok((pt.real("z")?, pt.real("alpha")?))
}

fn ext_alpha_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let n = pt.count("n")?;
    let (z, alpha) = z_alpha(pt)?;
    let nf = n as f64;
    let rule = CoefficientRule::new(Support::From(0), 0, 2.0, move |k| {
        if k == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            i_pow(k * n as i64) * (2.0 * (k as f64 * nf * alpha).cos())
        }
    });
    weighted_series(&SeriesSpec::new(n, 0, z, 0.0)?, &rule, b)
}

fn ext_alpha_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let n = pt.count("n")?;
    let (z, alpha) = z_alpha(pt)?;
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for l in 0..n {
        let arg = z * (alpha + 2.0 * PI * l as f64 / n as f64).cos();
        re.add(arg.cos());
        im.add(arg.sin());
    }
    Ok(Certified::exact(Complex64::new(re.value(), im.value()) / n as f64))
}

fn jacobi_even_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    cosine_series(2, z, 1.0, move |k| alternating(k) * (2.0 * k as f64 * alpha).cos(), b)
}

fn jacobi_even_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    real((z * alpha.cos()).cos())
}

fn jacobi_odd_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    one_sided(
        2,
        1,
        z,
        0,
        (0, 1.0),
        move |k| alternating(k) * ((2 * k + 1) as f64 * alpha).cos(),
        b,
    )
}

fn jacobi_odd_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    real(0.5 * (z * alpha.cos()).sin())
}

fn jacobi_even_shift_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    cosine_series(2, z, 1.0, move |k| (2.0 * k as f64 * alpha).cos(), b)
}

fn jacobi_even_shift_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    real((z * alpha.sin()).cos())
}

fn jacobi_odd_shift_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    one_sided(2, 1, z, 0, (0, 1.0), move |k| ((2 * k + 1) as f64 * alpha).sin(), b)
}

fn jacobi_odd_shift_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    real(0.5 * (z * alpha.sin()).sin())
}

fn fold_2n_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let n = pt.count("n")?;
    let (z, alpha) = z_alpha(pt)?;
    let nf = n as f64;
    cosine_series(
        2 * n,
        z,
        1.0,
        move |k| alternating(k * n as i64) * (2.0 * k as f64 * nf * alpha).cos(),
        b,
    )
}

/// `(1/n) Σ_{ℓ<n} trig(z cos(α + step·ℓ))`.
fn cos_fan(n: u64, z: f64, alpha: f64, step: f64, trig: fn(f64) -> f64) -> f64 {
    let s: CompensatedSum = (0..n).map(|l| trig(z * (alpha + step * l as f64).cos())).collect();
    s.value() / n as f64
}

fn fold_2n_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let n = pt.count("n")?;
    let (z, alpha) = z_alpha(pt)?;
    real(cos_fan(n, z, alpha, PI / n as f64, f64::cos))
}

fn deriv_2k_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let z = pt.real("z")?;
    one_sided(4, 2, z, 0, (1, 6.0), |k| alternating(k) * (4 * k + 2) as f64, b)
}

fn deriv_2k_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let z = pt.real("z")?;
    let s = 2f64.sqrt();
    real(z * s / 4.0 * (z * s / 2.0).sin())
}

fn cos4k_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    cosine_series(4, z, 1.0, move |k| (4.0 * k as f64 * alpha).cos(), b)
}

fn cos4k_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    real(0.5 * ((z * alpha.sin()).cos() + (z * alpha.cos()).cos()))
}

fn deriv_4k_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    one_sided(
        4,
        0,
        z,
        1,
        (1, 1.0),
        move |k| k as f64 * (4.0 * k as f64 * alpha).sin(),
        b,
    )
}

fn deriv_4k_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    let (s, c) = alpha.sin_cos();
    real(z / 16.0 * ((z * s).sin() * c - (z * c).sin() * s))
}

fn k2_4k_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let z = pt.real("z")?;
    one_sided(4, 0, z, 1, (2, 1.0), |k| (k * k) as f64, b)
}

fn k2_4k_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let z = pt.real("z")?;
    real(z / 64.0 * (z - z.sin()))
}

fn odd_fold_even_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let m = 2 * pt.count("n")? + 1;
    let (z, alpha) = z_alpha(pt)?;
    let mf = (2 * m) as f64;
    cosine_series(
        2 * m,
        z,
        1.0,
        move |k| alternating(k) * (mf * k as f64 * alpha).cos(),
        b,
    )
}

fn odd_fold_even_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let m = 2 * pt.count("n")? + 1;
    let (z, alpha) = z_alpha(pt)?;
    real(cos_fan(m, z, alpha, 2.0 * PI / m as f64, f64::cos))
}

fn odd_fold_odd_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let n = pt.count("n")?;
    let m = 2 * n + 1;
    let (z, alpha) = z_alpha(pt)?;
    let mf = m as f64;
    let sign = alternating(n as i64);
    one_sided(
        2 * m,
        m as i64,
        z,
        0,
        (0, 2.0),
        move |k| 2.0 * sign * alternating(k) * (mf * (2 * k + 1) as f64 * alpha).cos(),
        b,
    )
}

fn odd_fold_odd_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let m = 2 * pt.count("n")? + 1;
    let (z, alpha) = z_alpha(pt)?;
    real(cos_fan(m, z, alpha, 2.0 * PI / m as f64, f64::sin))
}

/// `Σ_{k≥0} (−1)^k J_{m(2k+1)}(z) cos(m(2k+1)α)`.
fn odd_harmonic_series(m: u64, z: f64, alpha: f64, b: &EvalBudget) -> Result<Certified> {
    let mf = m as f64;
    one_sided(
        2 * m,
        m as i64,
        z,
        0,
        (0, 1.0),
        move |k| alternating(k) * (mf * (2 * k + 1) as f64 * alpha).cos(),
        b,
    )
}

fn hexagon_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    odd_harmonic_series(3, z, alpha, b)
}

fn hexagon_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    real(special_mode("hexagon-triangle", PlanePoint::from_polar(z, alpha))?)
}

fn decagon_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    odd_harmonic_series(5, z, alpha, b)
}

fn decagon_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (z, alpha) = z_alpha(pt)?;
    real(decagon_cartesian(PlanePoint::from_polar(z, alpha)) / 10.0)
}

/// `Σ_{k∈ℤ} J²_{kn+p}(x)`.
fn squares_two_sided(n: u64, p: i64, x: f64, b: &EvalBudget) -> Result<Certified> {
    let f = BesselFactor::forward(p, x);
    product_series(n, f, f, &CoefficientRule::unit(), b)
}

/// Right side of the residue-class Parseval identity.
pub fn parseval_rhs(n: u64, p: i64, x: f64) -> Result<f64> {
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    acc.add(1.0);
    for k in 1..n {
        let phase = 2.0 * PI * ((k as i64 * p).rem_euclid(n as i64)) as f64 / nf;
        acc.add(phase.cos() * bessel_j(0, 2.0 * x * (PI * k as f64 / nf).sin())?);
    }
    Ok(acc.value() / nf)
}

fn parseval_general_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    squares_two_sided(pt.count("n")?, pt.int("p")?, pt.real("x")?, b)
}

fn parseval_general_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    real(parseval_rhs(pt.count("n")?, pt.int("p")?, pt.real("x")?)?)
}

fn parseval_even_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (n, x) = (pt.count("n")?, pt.real("x")?);
    let f = BesselFactor::forward(0, x);
    let rule = CoefficientRule::one_sided(0, 0, 2.0, |k| if k == 0 { 1.0 } else { 2.0 });
    product_series(2 * n, f, f, &rule, b)
}

fn parseval_even_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (n, x) = (pt.count("n")?, pt.real("x")?);
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    acc.add(0.5 / nf);
    acc.add(bessel_j(0, 2.0 * x)? / (2.0 * nf));
    for k in 1..n {
        acc.add(bessel_j(0, 2.0 * x * (PI * k as f64 / (2.0 * nf)).cos())? / nf);
    }
    real(acc.value())
}

fn parseval_odd_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (n, x) = (pt.count("n")?, pt.real("x")?);
    let f = BesselFactor::forward(n as i64, x);
    product_series(2 * n, f, f, &CoefficientRule::one_sided(0, 0, 1.0, |_| 1.0), b)
}

fn parseval_odd_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (n, x) = (pt.count("n")?, pt.real("x")?);
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    acc.add(0.25 / nf);
    acc.add(alternating(n as i64) * bessel_j(0, 2.0 * x)? / (4.0 * nf));
    for l in 1..n {
        acc.add(alternating(l as i64) * bessel_j(0, 2.0 * x * (PI * l as f64 / (2.0 * nf)).sin())? / (2.0 * nf));
    }
    real(acc.value())
}

fn product_master_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let n = pt.count("n")?;
    let (p, q) = (pt.int("p")?, pt.int("q")?);
    let (z, zp, t) = (pt.real("z")?, pt.real("zp")?, pt.real("t")?);
    let nf = n as f64;
    let rule = CoefficientRule::new(Support::TwoSided, 0, 1.0, move |k| {
        cis((k as f64 * nf + p as f64) * 2.0 * t)
    });
    product_series(n, BesselFactor::forward(p, z), BesselFactor::reversed(q, zp), &rule, b)
}

fn product_master_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let value = product_rhs_integral(
        pt.count("n")?,
        pt.int("p")?,
        pt.int("q")?,
        pt.real("z")?,
        pt.real("zp")?,
        pt.real("t")?,
    )?;
    Ok(Certified::exact(value))
}

/// `Σ_{k∈ℤ} w(k) J_{p+kn}(z) J_{q−kn}(z)` with unimodular weights.
fn same_argument_product(
    n: u64,
    p: i64,
    q: i64,
    z: f64,
    w: impl Fn(i64) -> Complex64 + Send + Sync,
    b: &EvalBudget,
) -> Result<Certified> {
    let rule = CoefficientRule::new(Support::TwoSided, 0, 1.0, w);
    product_series(n, BesselFactor::forward(p, z), BesselFactor::reversed(q, z), &rule, b)
}

fn samez_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let n = pt.count("n")?;
    let t = pt.real("t")?;
    let nf = n as f64;
    same_argument_product(
        n,
        pt.int("p")?,
        pt.int("q")?,
        pt.real("z")?,
        move |k| cis(2.0 * k as f64 * nf * t),
        b,
    )
}

fn samez_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let n = pt.count("n")?;
    let (p, q) = (pt.int("p")?, pt.int("q")?);
    let (z, t) = (pt.real("z")?, pt.real("t")?);
    let mut acc = crate::sum::ComplexSum::new();
    for l in 0..n {
        let shift = t + PI * l as f64 / n as f64;
        acc.add(cis(-((p - q) as f64) * shift) * bessel_j(p + q, 2.0 * z * shift.cos())?);
    }
    Ok(Certified::exact(acc.value() / n as f64))
}

fn graf_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let t = pt.real("t")?;
    same_argument_product(1, 0, pt.int("p")?, pt.real("z")?, move |k| cis(2.0 * k as f64 * t), b)
}

fn graf_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let p = pt.int("p")?;
    let (z, t) = (pt.real("z")?, pt.real("t")?);
    Ok(Certified::exact(cis(p as f64 * t) * bessel_j(p, 2.0 * z * t.cos())?))
}

fn product_n2_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let t = pt.real("t")?;
    same_argument_product(
        2,
        pt.int("p")?,
        pt.int("q")?,
        pt.real("z")?,
        move |k| cis(4.0 * k as f64 * t),
        b,
    )
}

fn product_n2_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (p, q) = (pt.int("p")?, pt.int("q")?);
    let (z, t) = (pt.real("z")?, pt.real("t")?);
    let cos_part = Complex64::new(bessel_j(p + q, 2.0 * z * t.cos())?, 0.0);
    let sin_part = i_pow(p - q) * bessel_j(p + q, 2.0 * z * t.sin())?;
    Ok(Certified::exact(
        0.5 * cis(-((p - q) as f64) * t) * (cos_part + sin_part),
    ))
}

fn quarter_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    same_argument_product(
        2,
        pt.int("p")?,
        pt.int("q")?,
        pt.real("z")?,
        |k| Complex64::new(alternating(k), 0.0),
        b,
    )
}

fn quarter_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (p, q) = (pt.int("p")?, pt.int("q")?);
    let z = pt.real("z")?;
    // cos((p−q)π/4) from the residue of p−q mod 8, exactly.
    let c = [
        1.0,
        FRAC_PI_4.cos(),
        0.0,
        -FRAC_PI_4.cos(),
        -1.0,
        -FRAC_PI_4.cos(),
        0.0,
        FRAC_PI_4.cos(),
    ][(p - q).rem_euclid(8) as usize];
    real(bessel_j(p + q, z * 2f64.sqrt())? * c)
}

fn half_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    same_argument_product(
        2,
        pt.int("p")?,
        pt.int("q")?,
        pt.real("z")?,
        |_| Complex64::new(1.0, 0.0),
        b,
    )
}

fn half_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    real(0.5 * bessel_j(pt.int("p")? + pt.int("q")?, 2.0 * pt.real("z")?)?)
}

fn half_constraint(pt: &ParamPoint) -> Option<String> {
    match (pt.get("p"), pt.get("q")) {
        (Some(p), Some(q)) if p + q == 0.0 => {
            Some("p + q = 0 leaves an extra ½(−1)^p term; the identity needs p + q ≠ 0".into())
        }
        _ => None,
    }
}

fn zzp_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let n = pt.count("n")?;
    let (z, zp) = (pt.real("z")?, pt.real("zp")?);
    let rule = CoefficientRule::one_sided(
        0,
        0,
        2.0,
        move |k| {
            if k == 0 {
                1.0
            } else {
                2.0 * alternating(k * n as i64)
            }
        },
    );
    product_series(n, BesselFactor::forward(0, z), BesselFactor::forward(0, zp), &rule, b)
}

fn zzp_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let value = product_rhs_integral(pt.count("n")?, 0, 0, pt.real("z")?, pt.real("zp")?, 0.0)?;
    Ok(Certified::exact(value))
}

fn new_4k_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (x, y) = (pt.real("x")?, pt.real("y")?);
    let rule = CoefficientRule::one_sided(1, 0, 1.0, |_| 1.0);
    product_series(4, BesselFactor::forward(0, x), BesselFactor::forward(0, y), &rule, b)
}

fn new_4k_r(pt: &ParamPoint, _: &EvalBudget) -> Result<Certified> {
    let (x, y) = (pt.real("x")?, pt.real("y")?);
    let mut acc = CompensatedSum::new();
    acc.add(bessel_j(0, x + y)?);
    acc.add(bessel_j(0, x - y)?);
    acc.add(-4.0 * bessel_j(0, x)? * bessel_j(0, y)?);
    acc.add(2.0 * bessel_j(0, x.hypot(y))?);
    real(acc.value() / 8.0)
}

fn rational_even_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (a, z) = (pt.real("a")?, pt.real("z")?);
    let scale = (1.0 / a).max(0.5);
    one_sided(
        2,
        0,
        z,
        0,
        (0, scale),
        move |k| {
            if k == 0 {
                1.0 / a
            } else {
                2.0 * a / (a * a + (4 * k * k) as f64)
            }
        },
        b,
    )
}

fn rational_odd_l(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (a, z) = (pt.real("a")?, pt.real("z")?);
    let scale = (1.0 / a).min(2.0);
    one_sided(
        2,
        1,
        z,
        0,
        (0, scale),
        move |k| {
            let m = (2 * k + 1) as f64;
            2.0 * m / (a * a + m * m)
        },
        b,
    )
}

/// `Σ_{k≥0} (−1)^k z^{2k+s} / Π_{j≤k} d(j)` in double-double arithmetic,
/// where `d` grows without bound. The alternating terms peak far above the
/// sum for large `z`, so the denominators are formed in double-double too.
/// Summation stops once the remaining terms, bounded geometrically, fall
/// under `eps`.
fn alternating_product_series(z: f64, s: i32, d: impl Fn(u64) -> DoubleDouble, b: &EvalBudget) -> Result<Certified> {
    let z2 = DoubleDouble::product(z, z);
    let mut term = DoubleDouble::new(z.powi(s)) / d(0);
    let mut sum = term;
    for k in 1..=b.max_terms as u64 {
        term = -(term * z2) / d(k);
        sum = sum + term;
        let ratio = z * z / d(k + 1).hi();
        if ratio < 0.5 {
            let tail = term.abs().hi() * ratio / (1.0 - ratio);
            if tail <= b.eps {
                let rounding = 1e-30 * sum.abs().hi().max(term.abs().hi());
                return Ok(Certified {
                    value: Complex64::new(sum.to_f64(), 0.0),
                    tail: tail + rounding,
                    terms: k + 1,
                });
            }
        }
    }
    Err(Error::Budget {
        terms: b.max_terms,
        achieved: f64::INFINITY,
    })
}

/// `a² + m²` without rounding `a²`.
fn damped_square(a: f64, m: u64) -> DoubleDouble {
    DoubleDouble::product(a, a) + DoubleDouble::new((m * m) as f64)
}

fn rational_even_r(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (a, z) = (pt.real("a")?, pt.real("z")?);
    alternating_product_series(
        z,
        0,
        |k| {
            if k == 0 {
                DoubleDouble::new(a)
            } else {
                damped_square(a, 2 * k)
            }
        },
        b,
    )
}

fn rational_odd_r(pt: &ParamPoint, b: &EvalBudget) -> Result<Certified> {
    let (a, z) = (pt.real("a")?, pt.real("z")?);
    alternating_product_series(z, 1, |k| damped_square(a, 2 * k + 1), b)
}

fn record(
    id: &'static str,
    title: &'static str,
    formula: &'static str,
    params: Vec<ParamSpec>,
    lhs: super::SideFn,
    rhs: super::SideFn,
) -> IdentityRecord {
    IdentityRecord {
        id,
        title,
        formula,
        params,
        lhs,
        rhs,
        constraint: None,
    }
}

pub(super) fn all() -> Vec<IdentityRecord> {
    let small_ints = [0.0, 1.0, 2.0, 3.0];
    let signed_ints = [-2.0, 0.0, 1.0, 3.0];
    let mut half = record(
        "product-t-half",
        "Paired residue product at t = π/2",
        "Σ_k J_{p+2k}(z) J_{q−2k}(z) = ½ J_{p+q}(2z), p + q ≠ 0",
        vec![
            int("p", -8, 8, &signed_ints),
            int("q", -8, 8, &signed_ints),
            z_param("z"),
        ],
        half_l,
        half_r,
    );
    half.constraint = Some(half_constraint);

    vec![
        record(
            "master",
            "Residue-class Neumann sum",
            "Σ_{k∈ℤ} J_{kn+p}(z) e^{ikny} = (1/n) Σ_{ℓ<n} exp(i z sin(y+2πℓ/n) − i p (y+2πℓ/n))",
            vec![
                int("n", 1, 64, &[1.0, 2.0, 3.0, 4.0, 6.0, 8.0]),
                int("p", -64, 64, &[0.0, 1.0, 2.0, 3.0, 5.0, 8.0]),
                ParamSpec::new("z", ParamKind::Real, -50.0, 50.0, &Z_GRID),
                ParamSpec::new("y", ParamKind::Angle, -ANGLE_MAX, ANGLE_MAX, &ANGLE_GRID),
            ],
            master_l,
            master_r,
        ),
        record(
            "sq-ground",
            "Square ground state, area π",
            "J_0(√(2π) r) + 2 Σ_{k≥1} J_{4k}(√(2π) r) cos(4kθ) = ½cos(x√(2π)) + ½cos(y√(2π))",
            vec![radius("r"), angle("theta")],
            square_l,
            square_r,
        ),
        record(
            "tri-ground",
            "Equilateral triangle ground state, area π",
            "J_0(λr) + 2 Σ_{k≥1} [cos(kπ/2 − π/6)/cos(π/6)] J_{3k}(λr) cos(3kθ) = (2/(3√3)) [sin(4πx/(3R) + 2π/3) ± sin(2π(x+√3y)/(3R) − 2π/3) ± sin(2π(x−√3y)/(3R) − 2π/3)], λ² = 4π/√3, R = (2/3)√(π√3)",
            vec![radius("r"), angle("theta")],
            triangle_l,
            triangle_r,
        ),
        record(
            "fn-general",
            "Polygon-adapted sum f_n",
            "J_0(r) + 2 Σ_{k≥1} [cos(3πnk/2 − π/(2n))/cos(π/(2n))] J_{nk}(r) cos(nkθ) = (1/n) Σ_{ℓ<n} cos(r cos(θ + 2πℓ/n) + π/(2n))/cos(π/(2n))",
            vec![
                int("n", 2, 24, &[2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]),
                ParamSpec::new("r", ParamKind::Real, 0.0, Z_MAX, &Z_GRID),
                angle("theta"),
            ],
            fn_l,
            fn_r,
        ),
        record(
            "f6-kagome",
            "Sixfold sum",
            "J_0(r) + 2 Σ_{k≥1} (−1)^k J_{6k}(r) cos(6kθ) = ⅓cos x + ⅔cos(x/2)cos(√3y/2)",
            vec![ParamSpec::new("r", ParamKind::Real, 0.0, Z_MAX, &Z_GRID), angle("theta")],
            kagome_l,
            kagome_r,
        ),
        record(
            "ext-alpha",
            "Angle extension at p = 0, y = π/2 + α",
            "J_0(z) + 2 Σ_{k≥1} i^{kn} J_{kn}(z) cos(knα) = (1/n) Σ_{ℓ<n} exp(i z cos(α + 2πℓ/n))",
            vec![int("n", 1, 32, &fold_grid(8)), z_param("z"), angle("alpha")],
            ext_alpha_l,
            ext_alpha_r,
        ),
        record(
            "jacobi-even",
            "Jacobi expansion, even part",
            "J_0(z) + 2 Σ_{k≥1} (−1)^k J_{2k}(z) cos(2kα) = cos(z cos α)",
            vec![z_param("z"), angle("alpha")],
            jacobi_even_l,
            jacobi_even_r,
        ),
        record(
            "jacobi-odd",
            "Jacobi expansion, odd part",
            "Σ_{k≥0} (−1)^k J_{2k+1}(z) cos((2k+1)α) = ½ sin(z cos α)",
            vec![z_param("z"), angle("alpha")],
            jacobi_odd_l,
            jacobi_odd_r,
        ),
        record(
            "jacobi-even-shift",
            "Jacobi expansion, even part, α → α + π/2",
            "J_0(z) + 2 Σ_{k≥1} J_{2k}(z) cos(2kα) = cos(z sin α)",
            vec![z_param("z"), angle("alpha")],
            jacobi_even_shift_l,
            jacobi_even_shift_r,
        ),
        record(
            "jacobi-odd-shift",
            "Jacobi expansion, odd part, α → α + π/2",
            "Σ_{k≥0} J_{2k+1}(z) sin((2k+1)α) = ½ sin(z sin α)",
            vec![z_param("z"), angle("alpha")],
            jacobi_odd_shift_l,
            jacobi_odd_shift_r,
        ),
        record(
            "fold-2n",
            "Even fold 2n",
            "J_0(z) + 2 Σ_{k≥1} (−1)^{kn} J_{2kn}(z) cos(2knα) = (1/n) Σ_{ℓ<n} cos(z cos(α + πℓ/n))",
            vec![int("n", 1, 32, &fold_grid(8)), z_param("z"), angle("alpha")],
            fold_2n_l,
            fold_2n_r,
        ),
        record(
            "deriv-2k",
            "Derivative of the twofold sum at α = π/4",
            "Σ_{k≥0} (−1)^k (4k+2) J_{4k+2}(z) = (z√2/4) sin(z√2/2)",
            vec![z_param("z")],
            deriv_2k_l,
            deriv_2k_r,
        ),
        record(
            "cos4k",
            "Fourfold cosine sum",
            "J_0(z) + 2 Σ_{k≥1} J_{4k}(z) cos(4kα) = ½[cos(z sin α) + cos(z cos α)]",
            vec![z_param("z"), angle("alpha")],
            cos4k_l,
            cos4k_r,
        ),
        record(
            "deriv-4k",
            "Derivative of the fourfold cosine sum",
            "Σ_{k≥1} k J_{4k}(z) sin(4kα) = (z/16)[sin(z sin α) cos α − sin(z cos α) sin α]",
            vec![z_param("z"), angle("alpha")],
            deriv_4k_l,
            deriv_4k_r,
        ),
        record(
            "k2-4k",
            "Second moment of the fourfold sum",
            "Σ_{k≥1} k² J_{4k}(z) = (z/64)(z − sin z)",
            vec![z_param("z")],
            k2_4k_l,
            k2_4k_r,
        ),
        record(
            "odd-fold-even",
            "Odd fold 2n+1, even part",
            "J_0(z) + 2 Σ_{k≥1} (−1)^k J_{(4n+2)k}(z) cos((4n+2)kα) = (1/(2n+1)) Σ_{ℓ≤2n} cos(z cos(α + 2πℓ/(2n+1)))",
            vec![int("n", 0, 16, &[0.0, 1.0, 2.0, 3.0, 5.0]), z_param("z"), angle("alpha")],
            odd_fold_even_l,
            odd_fold_even_r,
        ),
        record(
            "odd-fold-odd",
            "Odd fold 2n+1, odd part",
            "2 Σ_{k≥0} (−1)^{n+k} J_{(2n+1)(2k+1)}(z) cos((2n+1)(2k+1)α) = (1/(2n+1)) Σ_{ℓ≤2n} sin(z cos(α + 2πℓ/(2n+1)))",
            vec![int("n", 0, 16, &[0.0, 1.0, 2.0, 3.0, 5.0]), z_param("z"), angle("alpha")],
            odd_fold_odd_l,
            odd_fold_odd_r,
        ),
        record(
            "hexagon-triangle",
            "Threefold odd mode",
            "Σ_{k≥0} (−1)^k J_{6k+3}(z) cos((6k+3)α) = −(1/6) Σ_{ℓ<3} sin(z cos(α + 2πℓ/3))",
            vec![z_param("z"), angle("alpha")],
            hexagon_l,
            hexagon_r,
        ),
        record(
            "decagon",
            "Fivefold odd mode",
            "Σ_{k≥0} (−1)^k J_{10k+5}(z) cos((10k+5)α) = (1/10)[sin x − 2 sin(x cos π/5) cos(y sin π/5) + 2 sin(x cos 2π/5) cos(y sin 2π/5)], x = z cos α, y = z sin α",
            vec![z_param("z"), angle("alpha")],
            decagon_l,
            decagon_r,
        ),
        record(
            "parseval-general",
            "Residue-class sum of squares",
            "Σ_{k∈ℤ} J²_{kn+p}(x) = 1/n + (1/n) Σ_{k=1}^{n−1} cos(2πkp/n) J_0(2x sin(πk/n))",
            vec![int("n", 1, 32, &fold_grid(8)), int("p", -32, 32, &small_ints), z_param("x")],
            parseval_general_l,
            parseval_general_r,
        ),
        record(
            "parseval-even",
            "Sum of squares over multiples of 2n",
            "J_0²(x) + 2 Σ_{k≥1} J²_{2kn}(x) = 1/(2n) + J_0(2x)/(2n) + (1/n) Σ_{k=1}^{n−1} J_0(2x cos(πk/(2n)))",
            vec![int("n", 1, 32, &fold_grid(8)), z_param("x")],
            parseval_even_l,
            parseval_even_r,
        ),
        record(
            "parseval-odd",
            "Sum of squares over odd multiples of n",
            "Σ_{k≥0} J²_{(2k+1)n}(x) = 1/(4n) + (−1)^n J_0(2x)/(4n) + (1/(2n)) Σ_{ℓ=1}^{n−1} (−1)^ℓ J_0(2x sin(πℓ/(2n)))",
            vec![int("n", 1, 32, &fold_grid(8)), z_param("x")],
            parseval_odd_l,
            parseval_odd_r,
        ),
        record(
            "product-master",
            "Residue-class product series",
            "Σ_{k∈ℤ} J_{p+kn}(z) J_{q−kn}(z') e^{i(kn+p)2t} = (1/n) Σ_{ℓ<n} e^{−2πipℓ/n} (1/2π)∫ exp(i z sin(y+2t+2πℓ/n) + i z' sin y − i(p+q)y) dy",
            vec![
                int("n", 1, 16, &[1.0, 2.0, 3.0, 4.0]),
                int("p", -8, 8, &[0.0, 1.0, 2.0]),
                int("q", -8, 8, &[-1.0, 0.0, 3.0]),
                ParamSpec::new("z", ParamKind::Real, -Z_MAX, Z_MAX, &[0.0, 1.0, 5.0, 12.0]),
                ParamSpec::new("zp", ParamKind::Real, -Z_MAX, Z_MAX, &[0.0, 2.5, 7.0]),
                ParamSpec::new("t", ParamKind::Angle, -ANGLE_MAX, ANGLE_MAX, &[0.0, 0.3, 1.1]),
            ],
            product_master_l,
            product_master_r,
        ),
        record(
            "product-samez",
            "Residue-class product, equal arguments",
            "Σ_{k∈ℤ} J_{p+kn}(z) J_{q−kn}(z) e^{2iknt} = (1/n) Σ_{ℓ<n} e^{−i(p−q)(t+πℓ/n)} J_{p+q}(2z cos(t + πℓ/n))",
            vec![
                int("n", 1, 16, &[1.0, 2.0, 3.0, 5.0]),
                int("p", -8, 8, &signed_ints),
                int("q", -8, 8, &signed_ints),
                ParamSpec::new("z", ParamKind::Real, -Z_MAX / 2.0, Z_MAX / 2.0, &[0.0, 0.5, 2.5, 5.0, 10.0]),
                ParamSpec::new("t", ParamKind::Angle, -ANGLE_MAX, ANGLE_MAX, &[0.0, 0.3, 1.1, FRAC_PI_2, 2.6]),
            ],
            samez_l,
            samez_r,
        ),
        record(
            "graf-n1",
            "Graf addition, n = 1",
            "Σ_{k∈ℤ} J_k(z) J_{p−k}(z) e^{2ikt} = e^{ipt} J_p(2z cos t)",
            vec![
                int("p", -16, 16, &[-3.0, 0.0, 1.0, 2.0, 5.0]),
                ParamSpec::new("z", ParamKind::Real, -Z_MAX / 2.0, Z_MAX / 2.0, &Z_GRID[..6]),
                angle("t"),
            ],
            graf_l,
            graf_r,
        ),
        record(
            "product-n2",
            "Paired residue product, n = 2",
            "Σ_{k∈ℤ} J_{p+2k}(z) J_{q−2k}(z) e^{4ikt} = ½ e^{−i(p−q)t} [J_{p+q}(2z cos t) + i^{p−q} J_{p+q}(2z sin t)]",
            vec![
                int("p", -8, 8, &signed_ints),
                int("q", -8, 8, &signed_ints),
                ParamSpec::new("z", ParamKind::Real, -Z_MAX / 2.0, Z_MAX / 2.0, &Z_GRID[..6]),
                angle("t"),
            ],
            product_n2_l,
            product_n2_r,
        ),
        record(
            "product-t-quarter",
            "Paired residue product at t = π/4",
            "Σ_k (−1)^k J_{p+2k}(z) J_{q−2k}(z) = J_{p+q}(z√2) cos((p−q)π/4)",
            vec![int("p", -8, 8, &signed_ints), int("q", -8, 8, &signed_ints), z_param("z")],
            quarter_l,
            quarter_r,
        ),
        half,
        record(
            "product-zzp",
            "Product of two arguments at p = q = 0, t = 0",
            "J_0(z)J_0(z') + 2 Σ_{k≥1} (−1)^{kn} J_{kn}(z) J_{kn}(z') = (1/n) Σ_{ℓ<n} (1/2π)∫ exp(i z sin(y + 2πℓ/n) + i z' sin y) dy",
            vec![
                int("n", 1, 16, &fold_grid(6)),
                ParamSpec::new("z", ParamKind::Real, -Z_MAX, Z_MAX, &[0.0, 1.0, 2.5, 5.0, 10.0, 20.0]),
                ParamSpec::new("zp", ParamKind::Real, -Z_MAX, Z_MAX, &[0.0, 0.5, 3.0, 7.0, 15.0]),
            ],
            zzp_l,
            zzp_r,
        ),
        record(
            "product-4k-new",
            "Fourfold product sum",
            "Σ_{k≥1} J_{4k}(x) J_{4k}(y) = ⅛[J_0(x+y) + J_0(x−y) − 4J_0(x)J_0(y) + 2J_0(√(x²+y²))]",
            vec![
                ParamSpec::new("x", ParamKind::Real, -Z_MAX, Z_MAX, &Z_GRID),
                ParamSpec::new("y", ParamKind::Real, -Z_MAX, Z_MAX, &Z_GRID),
            ],
            new_4k_l,
            new_4k_r,
        ),
        record(
            "rational-even",
            "Damped sum, even orders",
            "J_0(z)/a + Σ_{k≥1} J_{2k}(z) 2a/(a²+4k²) = Σ_{k≥0} (−1)^k z^{2k} / (a(a²+4)…(a²+4k²))",
            vec![
                ParamSpec::new("a", ParamKind::Real, 0.1, 20.0, &DAMPING_GRID),
                ParamSpec::new("z", ParamKind::Real, -Z_MAX, Z_MAX, &Z_GRID),
            ],
            rational_even_l,
            rational_even_r,
        ),
        record(
            "rational-odd",
            "Damped sum, odd orders",
            "Σ_{k≥0} J_{2k+1}(z) 2(2k+1)/(a²+(2k+1)²) = Σ_{k≥0} (−1)^k z^{2k+1} / ((a²+1)(a²+9)…(a²+(2k+1)²))",
            vec![
                ParamSpec::new("a", ParamKind::Real, 0.1, 20.0, &DAMPING_GRID),
                ParamSpec::new("z", ParamKind::Real, -Z_MAX, Z_MAX, &Z_GRID),
            ],
            rational_odd_l,
            rational_odd_r,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_variant_is_balanced_minus_minus() {
        let v = triangle_variant();
        assert_eq!(v.signs, TriangleSigns(-1, -1));
        assert!(v.max_residual < 1e-10);
        assert!(v.candidates.iter().filter(|c| c.1 < 1e-6).count() == 1);
    }

    #[test]
    fn exact_quarter_turn_powers() {
        for m in -9..9 {
            let naive = Complex64::from_polar(1.0, m as f64 * FRAC_PI_2);
            assert!((i_pow(m) - naive).norm() < 1e-14);
        }
    }

    #[test]
    fn parseval_rhs_sums_to_one_over_residues() {
        for n in 2..=8u64 {
            let total: f64 = (0..n as i64).map(|p| parseval_rhs(n, p, 3.3).unwrap()).sum();
            assert!((total - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn rational_series_matches_direct_sum() {
        let b = EvalBudget::default();
        let (a, z) = (1.5_f64, 2.0_f64);
        let mut direct = 0.0;
        let mut d = a;
        for k in 0..30 {
            if k > 0 {
                d *= a * a + (4 * k * k) as f64;
            }
            direct += if k % 2 == 0 { 1.0 } else { -1.0 } * z.powi(2 * k) / d;
        }
        let got = rational_even_r(&ParamPoint::from_pairs(&[("a", a), ("z", z)]), &b).unwrap();
        assert!((got.value.re - direct).abs() <= got.tail + 1e-15);
        assert!(got.tail <= 1e-12);
    }
}
