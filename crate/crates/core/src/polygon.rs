//! Laplacian eigenfunctions adapted to regular polygons.
//!
//! Every mode here is a finite sum of unit-wavenumber plane waves, so values,
//! gradients, Hessians and finite-difference stencils are all evaluated
//! analytically from the wave list.

use std::f64::consts::PI;
use std::io::{self, Write};

use serde::Serialize;

use crate::bessel::EvalBudget;
use crate::error::{Error, Result};
use crate::format::fmt17;
use crate::series::{weighted_series, Certified, CoefficientRule, SeriesSpec};
use crate::sum::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub const ORIGIN: Self = Self { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self {
            x: r * theta.cos(),
            y: r * theta.sin(),
        }
    }

    pub fn r(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn theta(&self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotate(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    fn distance(&self, other: &Self) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Size constants of the regular `n`-gon of area π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolygonConstants {
    pub n: u32,
    /// Square root of the Dirichlet ground-state eigenvalue, where known in
    /// closed form (triangle and square).
    pub lambda: Option<f64>,
    pub circumradius: f64,
}

impl PolygonConstants {
    pub fn area_pi(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("a polygon needs at least 3 sides, got {n}")));
        }
        let nf = n as f64;
        let circumradius = (2.0 * PI / (nf * (2.0 * PI / nf).sin())).sqrt();
        let lambda = match n {
            3 => Some((4.0 * PI / 3f64.sqrt()).sqrt()),
            4 => Some((2.0 * PI).sqrt()),
            _ => None,
        };
        Ok(Self {
            n,
            lambda,
            circumradius,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Trig {
    Cos,
    Sin,
}

/// `amp · trig(kx·x + ky·y + phase)` with `kx² + ky² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct PlaneWave {
    amp: f64,
    kx: f64,
    ky: f64,
    phase: f64,
    trig: Trig,
}

impl PlaneWave {
    fn argument(&self, pt: PlanePoint) -> f64 {
        self.kx * pt.x + self.ky * pt.y + self.phase
    }

    fn value_at(&self, arg: f64) -> f64 {
        match self.trig {
            Trig::Cos => self.amp * arg.cos(),
            Trig::Sin => self.amp * arg.sin(),
        }
    }

    fn slope_at(&self, arg: f64) -> f64 {
        match self.trig {
            Trig::Cos => -self.amp * arg.sin(),
            Trig::Sin => self.amp * arg.cos(),
        }
    }
}

/// A finite sum of plane waves.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveSum {
    waves: Vec<PlaneWave>,
}

impl PlaneWaveSum {
    pub fn value(&self, pt: PlanePoint) -> f64 {
        self.waves
            .iter()
            .map(|w| w.value_at(w.argument(pt)))
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn gradient(&self, pt: PlanePoint) -> (f64, f64) {
        let (mut gx, mut gy) = (CompensatedSum::new(), CompensatedSum::new());
        for w in &self.waves {
            let s = w.slope_at(w.argument(pt));
            gx.add(w.kx * s);
            gy.add(w.ky * s);
        }
        (gx.value(), gy.value())
    }

    /// `[[f_xx, f_xy], [f_xy, f_yy]]`.
    pub fn hessian(&self, pt: PlanePoint) -> [[f64; 2]; 2] {
        let (mut xx, mut xy, mut yy) = (0.0, 0.0, 0.0);
        for w in &self.waves {
            let v = w.value_at(w.argument(pt));
            xx -= w.kx * w.kx * v;
            xy -= w.kx * w.ky * v;
            yy -= w.ky * w.ky * v;
        }
        [[xx, xy], [xy, yy]]
    }

    /// `|Δ_h f + f|` with the 5-point stencil of spacing `h`.
    ///
    /// The stencil differences use `g(a+b) + g(a-b) - 2g(a) = -4 sin²(b/2) g(a)`
    /// for `g ∈ {sin, cos}`, so they carry no cancellation error and the
    /// residual shows the pure `O(h²)` discretisation term.
    pub fn laplacian_residual(&self, pt: PlanePoint, h: f64) -> f64 {
        let mut acc = CompensatedSum::new();
        for w in &self.waves {
            let v = w.value_at(w.argument(pt));
            let sx = (0.5 * w.kx * h).sin();
            let sy = (0.5 * w.ky * h).sin();
            let stencil = 4.0 * (sx * sx + sy * sy) / (h * h);
            acc.add(v * (1.0 - stencil));
        }
        acc.value().abs()
    }

    /// The same residual computed from five point evaluations.
    pub fn laplacian_residual_pointwise(&self, pt: PlanePoint, h: f64) -> f64 {
        let f = |dx: f64, dy: f64| self.value(PlanePoint::new(pt.x + dx, pt.y + dy));
        let center = f(0.0, 0.0);
        let lap = (f(h, 0.0) + f(-h, 0.0) + f(0.0, h) + f(0.0, -h) - 4.0 * center) / (h * h);
        (lap + center).abs()
    }
}

/// Phase-reduced coefficient `cos(3πnk/2 - π/(2n)) / cos(π/(2n))` of the
/// generalised polygon sum. The multiple of π/2 is reduced exactly.
pub fn fn_weight(n: u32, k: u64) -> f64 {
    let quarter_turns = (3 * (n as u64 % 4) * (k % 4)) % 4;
    let offset = PI / (2.0 * n as f64);
    (quarter_turns as f64 * PI / 2.0 - offset).cos() / offset.cos()
}

/// Eigenmodes of the Laplacian with eigenvalue −1 evaluated here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// The generalised polygon sum `f_n`, `n ≥ 2`.
    Polygon(u32),
    /// Triangle ground state / hexagon excited state built from threefold sines.
    HexagonTriangle,
    /// Fivefold sine mode.
    Decagon,
}

impl Mode {
    pub fn polygon(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("f_n needs n ≥ 2, got {n}")));
        }
        Ok(Mode::Polygon(n))
    }

    /// Parses a mode name: `fn` (with `n`), `hexagon-triangle` or `decagon`.
    pub fn from_name(name: &str, n: Option<u32>) -> Result<Self> {
        match name {
            "fn" => Mode::polygon(n.ok_or_else(|| Error::Config("mode `fn` needs n".into()))?),
            "hexagon-triangle" => Ok(Mode::HexagonTriangle),
            "decagon" => Ok(Mode::Decagon),
            other => Err(Error::UnknownMode(other.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Mode::Polygon(n) => format!("f{n}"),
            Mode::HexagonTriangle => "hexagon-triangle".into(),
            Mode::Decagon => "decagon".into(),
        }
    }

    pub fn waves(&self) -> PlaneWaveSum {
        let fan = |count: u32, amp: f64, phase: f64, trig: Trig| {
            (0..count)
                .map(|l| {
                    let angle = 2.0 * PI * l as f64 / count as f64;
                    PlaneWave {
                        amp,
                        kx: angle.cos(),
                        ky: -angle.sin(),
                        phase,
                        trig,
                    }
                })
                .collect()
        };
        let waves = match *self {
            Mode::Polygon(n) => {
                let offset = PI / (2.0 * n as f64);
                fan(n, 1.0 / (n as f64 * offset.cos()), offset, Trig::Cos)
            }
            Mode::HexagonTriangle => fan(3, -1.0 / 6.0, 0.0, Trig::Sin),
            Mode::Decagon => fan(5, 1.0, 0.0, Trig::Sin),
        };
        PlaneWaveSum { waves }
    }

    pub fn value(&self, pt: PlanePoint) -> f64 {
        self.waves().value(pt)
    }
}

/// `f_n(x, y) = (1/n) Σ_ℓ cos(x cos(2πℓ/n) - y sin(2πℓ/n) + π/(2n)) / cos(π/(2n))`
/// for `n ≥ 2`.
pub fn f_n(n: u32, pt: PlanePoint) -> f64 {
    Mode::polygon(n).expect("n >= 2").value(pt)
}

/// Polar form `(1/n) Σ_ℓ cos(r cos(θ + 2πℓ/n) + π/(2n)) / cos(π/(2n))`.
pub fn f_n_polar(n: u32, r: f64, theta: f64) -> f64 {
    assert!(n >= 2, "f_n needs n >= 2");
    let offset = PI / (2.0 * n as f64);
    let sum: CompensatedSum = (0..n)
        .map(|l| (r * (theta + 2.0 * PI * l as f64 / n as f64).cos() + offset).cos())
        .collect();
    sum.value() / (n as f64 * offset.cos())
}

/// Neumann form `J_0(r) + 2 Σ_{k≥1} w_k J_{nk}(r) cos(nkθ)` of `f_n`.
pub fn f_n_series(n: u32, pt: PlanePoint, budget: &EvalBudget) -> Result<Certified> {
    Mode::polygon(n)?;
    let theta = pt.theta();
    let nf = n as f64;
    let rule = CoefficientRule::one_sided(0, 0, 2.0 / (PI / (2.0 * nf)).cos(), move |k| {
        if k == 0 {
            1.0
        } else {
            2.0 * fn_weight(n, k as u64) * (nf * k as f64 * theta).cos()
        }
    });
    weighted_series(&SeriesSpec::new(n as u64, 0, pt.r(), 0.0)?, &rule, budget)
}

pub fn grad_f(n: u32, pt: PlanePoint) -> (f64, f64) {
    Mode::polygon(n).expect("n >= 2").waves().gradient(pt)
}

pub fn hessian_f(n: u32, pt: PlanePoint) -> [[f64; 2]; 2] {
    Mode::polygon(n).expect("n >= 2").waves().hessian(pt)
}

fn check_stencil_spacing(h: f64) -> Result<()> {
    if (1e-4..=1e-2).contains(&h) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "stencil spacing must lie in [1e-4, 1e-2], got {h}"
        )))
    }
}

/// `|Δ_h f_n + f_n|` at `pt`.
pub fn laplacian_residual(n: u32, pt: PlanePoint, h: f64) -> Result<f64> {
    mode_laplacian_residual(Mode::polygon(n)?, pt, h)
}

pub fn mode_laplacian_residual(mode: Mode, pt: PlanePoint, h: f64) -> Result<f64> {
    check_stencil_spacing(h)?;
    Ok(mode.waves().laplacian_residual(pt, h))
}

/// Closed-form special modes by name: `hexagon-triangle` or `decagon`.
pub fn special_mode(id: &str, pt: PlanePoint) -> Result<f64> {
    match id {
        "hexagon-triangle" => Ok(Mode::HexagonTriangle.value(pt)),
        "decagon" => Ok(Mode::Decagon.value(pt)),
        other => Err(Error::UnknownMode(other.to_string())),
    }
}

/// The fivefold mode written out in Cartesian products:
/// `sin x − 2 sin(x cos π/5) cos(y sin π/5) + 2 sin(x cos 2π/5) cos(y sin 2π/5)`.
pub fn decagon_cartesian(pt: PlanePoint) -> f64 {
    let (s1, c1) = (PI / 5.0).sin_cos();
    let (s2, c2) = (2.0 * PI / 5.0).sin_cos();
    pt.x.sin() - 2.0 * (pt.x * c1).sin() * (pt.y * s1).cos() + 2.0 * (pt.x * c2).sin() * (pt.y * s2).cos()
}

/// `(2/3) cos(x/2) [cos(x/2) + cos(√3 y/2)] − 1/3`, the factorised sixfold sum.
pub fn kagome_form(pt: PlanePoint) -> f64 {
    let c = (pt.x / 2.0).cos();
    (2.0 / 3.0) * c * (c + (3f64.sqrt() * pt.y / 2.0).cos()) - 1.0 / 3.0
}

/// Square ground state `½cos(x√(2π)) + ½cos(y√(2π))` (area π).
pub fn square_ground(pt: PlanePoint) -> f64 {
    let k = (2.0 * PI).sqrt();
    0.5 * (k * pt.x).cos() + 0.5 * (k * pt.y).cos()
}

/// Signs of the second and third sine in the triangle ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangleSigns(pub i8, pub i8);

impl TriangleSigns {
    pub const ALL: [TriangleSigns; 4] = [
        TriangleSigns(-1, -1),
        TriangleSigns(-1, 1),
        TriangleSigns(1, -1),
        TriangleSigns(1, 1),
    ];
}

/// Triangle ground state (area π) as a three-sine combination
/// `(2/(3√3)) [sin(4πx/(3R) + 2π/3) ± sin(2π(x+√3y)/(3R) − 2π/3) ± sin(2π(x−√3y)/(3R) − 2π/3)]`
/// with `R` the circumradius.
pub fn triangle_ground(pt: PlanePoint, signs: TriangleSigns) -> f64 {
    let s3 = 3f64.sqrt();
    let radius = (2.0 / 3.0) * (PI * s3).sqrt();
    let k = 2.0 * PI / (3.0 * radius);
    let a = (2.0 * k * pt.x + 2.0 * PI / 3.0).sin();
    let b = (k * (pt.x + s3 * pt.y) - 2.0 * PI / 3.0).sin();
    let c = (k * (pt.x - s3 * pt.y) - 2.0 * PI / 3.0).sin();
    2.0 / (3.0 * s3) * (a + signs.0 as f64 * b + signs.1 as f64 * c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolygonOrientation {
    /// One vertex on the positive x-axis.
    VertexOnAxis,
    /// One edge midpoint on the positive x-axis.
    EdgeMidpointOnAxis,
}

/// `per_edge` evenly spaced points on each edge of the regular `n`-gon with
/// the given circumradius (vertices included once).
pub fn boundary_samples(
    n: u32,
    circumradius: f64,
    orientation: PolygonOrientation,
    per_edge: usize,
) -> Vec<PlanePoint> {
    let start = match orientation {
        PolygonOrientation::VertexOnAxis => 0.0,
        PolygonOrientation::EdgeMidpointOnAxis => PI / n as f64,
    };
    let vertex = |k: u32| PlanePoint::from_polar(circumradius, start + 2.0 * PI * k as f64 / n as f64);
    (0..n)
        .flat_map(|k| {
            let (a, b) = (vertex(k), vertex(k + 1));
            (0..per_edge).map(move |j| {
                let t = j as f64 / per_edge as f64;
                PlanePoint::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
            })
        })
        .collect()
}

/// Largest `|f|` over boundary samples, for each orientation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrientationCheck {
    pub vertex_on_axis_max: f64,
    pub edge_midpoint_on_axis_max: f64,
    /// Orientation with the smaller boundary maximum.
    pub vanishing: PolygonOrientation,
}

pub fn certify_orientation(
    n: u32,
    circumradius: f64,
    samples_per_edge: usize,
    f: impl Fn(PlanePoint) -> f64,
) -> OrientationCheck {
    let max_abs = |o| {
        boundary_samples(n, circumradius, o, samples_per_edge)
            .into_iter()
            .map(|p| f(p).abs())
            .fold(0.0, f64::max)
    };
    let vertex = max_abs(PolygonOrientation::VertexOnAxis);
    let edge = max_abs(PolygonOrientation::EdgeMidpointOnAxis);
    OrientationCheck {
        vertex_on_axis_max: vertex,
        edge_midpoint_on_axis_max: edge,
        vanishing: if vertex <= edge {
            PolygonOrientation::VertexOnAxis
        } else {
            PolygonOrientation::EdgeMidpointOnAxis
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HessianClass {
    Min,
    Max,
    Saddle,
    Degenerate,
}

/// Hessian eigenvalues with magnitude below this count as zero.
pub const DEGENERATE_EIGENVALUE: f64 = 1e-8;

/// Gradient norm below which a Newton endpoint is accepted.
pub const ACCEPT_GRADIENT: f64 = 1e-10;

/// Default saddle search radius and seed spacing.
pub const DEFAULT_SEARCH_RADIUS: f64 = 8.0;
pub const SEED_SPACING: f64 = 0.25;

const DEDUP_DISTANCE: f64 = 1e-6;

fn symmetric_eigen(h: [[f64; 2]; 2]) -> [(f64, [f64; 2]); 2] {
    let (a, b, d) = (h[0][0], h[0][1], h[1][1]);
    let mean = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(b);
    let (l1, l2) = (mean + radius, mean - radius);
    let vec_for = |l: f64| {
        let u = [b, l - a];
        let v = [l - d, b];
        let pick = if u[0].hypot(u[1]) >= v[0].hypot(v[1]) { u } else { v };
        let norm = pick[0].hypot(pick[1]);
        if norm == 0.0 {
            None
        } else {
            Some([pick[0] / norm, pick[1] / norm])
        }
    };
    match (vec_for(l1), vec_for(l2)) {
        (Some(v1), _) if radius > 0.0 => [(l1, v1), (l2, [-v1[1], v1[0]])],
        _ => [(l1, [1.0, 0.0]), (l2, [0.0, 1.0])],
    }
}

pub fn classify(h: [[f64; 2]; 2]) -> HessianClass {
    let [(l1, _), (l2, _)] = symmetric_eigen(h);
    if l1.abs() < DEGENERATE_EIGENVALUE || l2.abs() < DEGENERATE_EIGENVALUE {
        HessianClass::Degenerate
    } else if l1 > 0.0 && l2 > 0.0 {
        HessianClass::Min
    } else if l1 < 0.0 && l2 < 0.0 {
        HessianClass::Max
    } else {
        HessianClass::Saddle
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub location: PlanePoint,
    pub grad_norm: f64,
    pub hessian_class: HessianClass,
    pub value: f64,
}

#[derive(Serialize)]
struct CriticalPointRecord {
    x: f64,
    y: f64,
    value: f64,
    class: HessianClass,
    grad_norm: f64,
}

/// Critical points as a JSON array of `{x, y, value, class, grad_norm}`.
pub fn critical_points_json(points: &[CriticalPoint]) -> String {
    let records: Vec<_> = points
        .iter()
        .map(|c| CriticalPointRecord {
            x: c.location.x,
            y: c.location.y,
            value: c.value,
            class: c.hessian_class,
            grad_norm: c.grad_norm,
        })
        .collect();
    serde_json::to_string_pretty(&records).expect("plain data serialises")
}

/// Newton iteration on `∇f = 0`; near-singular Hessian directions are
/// dropped (pseudo-inverse) and steps are capped at unit length.
fn newton_critical(waves: &PlaneWaveSum, seed: PlanePoint) -> Option<PlanePoint> {
    let mut pt = seed;
    for _ in 0..100 {
        let (gx, gy) = waves.gradient(pt);
        if gx.hypot(gy) < 1e-14 {
            break;
        }
        let mut step = [0.0, 0.0];
        for (l, v) in symmetric_eigen(waves.hessian(pt)) {
            if l.abs() > DEGENERATE_EIGENVALUE {
                let c = -(v[0] * gx + v[1] * gy) / l;
                step[0] += c * v[0];
                step[1] += c * v[1];
            }
        }
        let len = step[0].hypot(step[1]);
        if len == 0.0 || !len.is_finite() {
            break;
        }
        let cap = if len > 1.0 { 1.0 / len } else { 1.0 };
        pt = PlanePoint::new(pt.x + cap * step[0], pt.y + cap * step[1]);
        if len < 1e-15 {
            break;
        }
    }
    let (gx, gy) = waves.gradient(pt);
    (gx.hypot(gy) < ACCEPT_GRADIENT).then_some(pt)
}

fn polar_order(a: &PlanePoint, b: &PlanePoint) -> std::cmp::Ordering {
    a.r().total_cmp(&b.r()).then(a.theta().total_cmp(&b.theta()))
}

/// All critical points of a mode reached by Newton from a square seed grid
/// (spacing [`SEED_SPACING`]) inside the disc of the given radius.
pub fn find_critical_points(mode: Mode, search_radius: f64) -> Vec<CriticalPoint> {
    let waves = mode.waves();
    let steps = (search_radius / SEED_SPACING).floor() as i64;
    let mut found: Vec<PlanePoint> = Vec::new();
    for i in -steps..=steps {
        for j in -steps..=steps {
            let seed = PlanePoint::new(i as f64 * SEED_SPACING, j as f64 * SEED_SPACING);
            if seed.r() > search_radius {
                continue;
            }
            let Some(pt) = newton_critical(&waves, seed) else {
                continue;
            };
            if pt.r() > search_radius {
                continue;
            }
            if !found.iter().any(|q| q.distance(&pt) < DEDUP_DISTANCE) {
                found.push(pt);
            }
        }
    }
    found.sort_by(polar_order);
    found
        .into_iter()
        .map(|pt| {
            let (gx, gy) = waves.gradient(pt);
            CriticalPoint {
                location: pt,
                grad_norm: gx.hypot(gy),
                hessian_class: classify(waves.hessian(pt)),
                value: waves.value(pt),
            }
        })
        .collect()
}

/// Saddle (and degenerate) critical points of `f_n` within `search_radius`.
pub fn find_saddles(n: u32, search_radius: f64) -> Result<Vec<CriticalPoint>> {
    let mode = Mode::polygon(n)?;
    Ok(find_critical_points(mode, search_radius)
        .into_iter()
        .filter(|c| matches!(c.hessian_class, HessianClass::Saddle | HessianClass::Degenerate))
        .collect())
}

/// Saddles sharing one distance from the origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaddleRing {
    pub radius: f64,
    pub value: f64,
    pub count: usize,
    /// Largest deviation of a member's value from `value`.
    pub value_spread: f64,
}

pub fn saddle_rings(n: u32, search_radius: f64) -> Result<Vec<SaddleRing>> {
    let saddles: Vec<_> = find_saddles(n, search_radius)?
        .into_iter()
        .filter(|c| c.hessian_class == HessianClass::Saddle)
        .collect();
    let mut rings: Vec<Vec<CriticalPoint>> = Vec::new();
    for s in saddles {
        match rings.last_mut() {
            Some(ring) if (ring[0].location.r() - s.location.r()).abs() < 1e-6 => ring.push(s),
            _ => rings.push(vec![s]),
        }
    }
    Ok(rings
        .into_iter()
        .map(|ring| {
            let value = ring[0].value;
            SaddleRing {
                radius: ring[0].location.r(),
                value,
                count: ring.len(),
                value_spread: ring.iter().map(|c| (c.value - value).abs()).fold(0.0, f64::max),
            }
        })
        .collect())
}

/// Level of the separatrix through the innermost saddle ring of `f_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Separatrix {
    pub n: u32,
    pub value: f64,
    /// Estimated accuracy of `value`: ring spread plus the second-order
    /// effect of the residual gradient.
    pub accuracy: f64,
    pub ring_radius: f64,
    pub saddles: Vec<CriticalPoint>,
}

pub fn separatrix_value(n: u32) -> Result<Separatrix> {
    separatrix_value_within(n, DEFAULT_SEARCH_RADIUS)
}

pub fn separatrix_value_within(n: u32, search_radius: f64) -> Result<Separatrix> {
    let mode = Mode::polygon(n)?;
    let waves = mode.waves();
    let saddles: Vec<_> = find_saddles(n, search_radius)?
        .into_iter()
        .filter(|c| c.hessian_class == HessianClass::Saddle)
        .collect();
    let innermost = saddles.first().ok_or(Error::NoSaddle {
        n,
        radius: search_radius,
    })?;
    let ring_radius = innermost.location.r();
    let ring: Vec<_> = saddles
        .iter()
        .copied()
        .filter(|c| (c.location.r() - ring_radius).abs() < 1e-6)
        .collect();
    let value = innermost.value;
    let spread = ring.iter().map(|c| (c.value - value).abs()).fold(0.0, f64::max);
    let newton = ring
        .iter()
        .map(|c| {
            let [(l1, _), (l2, _)] = symmetric_eigen(waves.hessian(c.location));
            c.grad_norm * c.grad_norm / l1.abs().min(l2.abs())
        })
        .fold(0.0, f64::max);
    Ok(Separatrix {
        n,
        value,
        accuracy: spread + newton,
        ring_radius,
        saddles: ring,
    })
}

/// Rectangle and resolution of a sampled field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(Error::Config("field bounds must be finite with min < max".into()));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::Config("field resolution must be at least 2 x 2".into()));
        }
        Ok(())
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + (self.x_max - self.x_min) * i as f64 / (self.nx - 1) as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_min + (self.y_max - self.y_min) * j as f64 / (self.ny - 1) as f64
    }
}

/// Row-major samples: `values[j * nx + i]` is the value at `(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub spec: FieldSpec,
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.spec.nx + i]
    }

    /// CSV with header `x,y,value`, one row per sample in row-major order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,y,value")?;
        for j in 0..self.spec.ny {
            for i in 0..self.spec.nx {
                writeln!(
                    out,
                    "{},{},{}",
                    fmt17(self.spec.x(i)),
                    fmt17(self.spec.y(j)),
                    fmt17(self.at(i, j))
                )?;
            }
        }
        Ok(())
    }
}

pub fn sample_grid(mode: Mode, spec: &FieldSpec) -> Result<ScalarField> {
    spec.validate()?;
    let waves = mode.waves();
    let mut values = Vec::with_capacity(spec.nx * spec.ny);
    for j in 0..spec.ny {
        for i in 0..spec.nx {
            values.push(waves.value(PlanePoint::new(spec.x(i), spec.y(j))));
        }
    }
    Ok(ScalarField { spec: *spec, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_is_cosine_and_origin_is_one() {
        for &(x, y) in &[(0.3, 1.0), (-2.0, 4.0), (5.5, -0.1)] {
            assert!((f_n(2, PlanePoint::new(x, y)) - f64::cos(x)).abs() < 1e-15);
        }
        for n in 2..=12 {
            assert!((f_n(n, PlanePoint::ORIGIN) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn f6_closed_form() {
        for &(x, y) in &[(0.3f64, 1.0f64), (-2.0, 4.0), (5.5, -0.1)] {
            let expected = x.cos() / 3.0 + 2.0 / 3.0 * (x / 2.0).cos() * (3f64.sqrt() * y / 2.0).cos();
            assert!((f_n(6, PlanePoint::new(x, y)) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn polar_and_cartesian_forms_agree() {
        for n in 2..=9 {
            let pt = PlanePoint::from_polar(3.1, 0.77);
            assert!((f_n(n, pt) - f_n_polar(n, 3.1, 0.77)).abs() < 1e-14);
        }
    }

    #[test]
    fn series_matches_closed_form() {
        let b = EvalBudget::default();
        assert!((f_n_series(4, PlanePoint::ORIGIN, &b).unwrap().value.re - 1.0).abs() < 1e-15);
        let pt = PlanePoint::from_polar(3.0, 0.4);
        assert!((f_n_series(5, pt, &b).unwrap().value.re - f_n(5, pt)).abs() < 1e-10);
    }

    #[test]
    fn weight_phase_reduction_for_triangle() {
        // 9k ≡ k (mod 4), so both phases reduce to the same multiple of π/2.
        for k in 1..=100u64 {
            let triangle = ((k % 4) as f64 * PI / 2.0 - PI / 6.0).cos() / (PI / 6.0).cos();
            assert!((fn_weight(3, k) - triangle).abs() <= 1e-15, "k={k}");
            let unreduced = ((k as f64) * PI / 2.0 - PI / 6.0).cos() / (PI / 6.0).cos();
            assert!((fn_weight(3, k) - unreduced).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn gradient_examples() {
        for n in 3..=9 {
            let (gx, gy) = grad_f(n, PlanePoint::ORIGIN);
            assert!(gx.abs() < 1e-14 && gy.abs() < 1e-14);
        }
        let pt = PlanePoint::new(0.9, -1.3);
        let (gx, gy) = grad_f(2, pt);
        assert!((gx + 0.9f64.sin()).abs() < 1e-15 && gy.abs() < 1e-15);

        let pt = PlanePoint::new(1.7, 0.6);
        let h = 1e-6;
        let fd_x = (f_n(6, PlanePoint::new(pt.x + h, pt.y)) - f_n(6, PlanePoint::new(pt.x - h, pt.y))) / (2.0 * h);
        let fd_y = (f_n(6, PlanePoint::new(pt.x, pt.y + h)) - f_n(6, PlanePoint::new(pt.x, pt.y - h))) / (2.0 * h);
        let (gx, gy) = grad_f(6, pt);
        assert!((gx - fd_x).abs() < 1e-8 && (gy - fd_y).abs() < 1e-8);
    }

    #[test]
    fn hessian_matches_gradient_differences() {
        let pt = PlanePoint::new(-0.8, 2.2);
        let h = 1e-6;
        let hess = hessian_f(7, pt);
        let (gxp, gyp) = grad_f(7, PlanePoint::new(pt.x + h, pt.y));
        let (gxm, gym) = grad_f(7, PlanePoint::new(pt.x - h, pt.y));
        assert!((hess[0][0] - (gxp - gxm) / (2.0 * h)).abs() < 1e-8);
        assert!((hess[0][1] - (gyp - gym) / (2.0 * h)).abs() < 1e-8);
    }

    #[test]
    fn laplacian_examples() {
        assert!(laplacian_residual(2, PlanePoint::new(0.7, 0.0), 1e-3).unwrap() <= 1e-6);
        assert!(laplacian_residual(7, PlanePoint::new(0.5, 0.3), 1e-3).unwrap() <= 1e-5);
        let r = mode_laplacian_residual(Mode::Decagon, PlanePoint::new(1.0, 0.4), 1e-3).unwrap();
        assert!(r <= 1e-5);
        assert!(laplacian_residual(5, PlanePoint::ORIGIN, 0.5).is_err());
    }

    #[test]
    fn analytic_stencil_agrees_with_pointwise_stencil() {
        let waves = Mode::Polygon(5).waves();
        let pt = PlanePoint::new(1.3, -0.4);
        let a = waves.laplacian_residual(pt, 1e-2);
        let b = waves.laplacian_residual_pointwise(pt, 1e-2);
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn special_modes() {
        assert_eq!(special_mode("decagon", PlanePoint::ORIGIN).unwrap(), 0.0);
        assert_eq!(special_mode("hexagon-triangle", PlanePoint::ORIGIN).unwrap(), 0.0);
        assert!(matches!(
            special_mode("heptagon", PlanePoint::ORIGIN),
            Err(Error::UnknownMode(_))
        ));
        for &(x, y) in &[(2.0, 1.0), (-0.4, 3.3), (7.0, -2.5)] {
            let pt = PlanePoint::new(x, y);
            assert!((special_mode("decagon", pt).unwrap() - decagon_cartesian(pt)).abs() < 1e-13);
        }
    }

    #[test]
    fn symmetries() {
        for n in 2..=12 {
            for &(x, y) in &[(0.4, 1.9), (-3.0, 0.2), (2.5, -4.1)] {
                let pt = PlanePoint::new(x, y);
                let v = f_n(n, pt);
                assert!((f_n(n, pt.rotate(2.0 * PI / n as f64)) - v).abs() < 1e-13);
                assert!((f_n(n, PlanePoint::new(x, -y)) - v).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn classification() {
        assert_eq!(classify([[1.0, 0.0], [0.0, 2.0]]), HessianClass::Min);
        assert_eq!(classify([[-1.0, 0.0], [0.0, -2.0]]), HessianClass::Max);
        assert_eq!(classify([[1.0, 0.0], [0.0, -2.0]]), HessianClass::Saddle);
        assert_eq!(classify([[0.0, 1.0], [1.0, 0.0]]), HessianClass::Saddle);
        assert_eq!(classify([[-1.0, 0.0], [0.0, 1e-12]]), HessianClass::Degenerate);
    }

    #[test]
    fn f2_saddles_are_degenerate() {
        let pts = find_saddles(2, 4.0).unwrap();
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|c| c.hessian_class == HessianClass::Degenerate));
        assert!(pts
            .iter()
            .all(|c| (c.location.x / PI - (c.location.x / PI).round()).abs() < 1e-9));
    }

    #[test]
    fn sixfold_separatrix_is_minus_one_third() {
        let s = separatrix_value(6).unwrap();
        assert!((s.value + 1.0 / 3.0).abs() < 1e-10);
        assert_eq!(s.saddles.len(), 6);
        assert!(s.accuracy <= 1e-10);
    }

    #[test]
    fn polygon_constants() {
        let tri = PolygonConstants::area_pi(3).unwrap();
        assert!((tri.circumradius - 2.0 / 3.0 * (PI * 3f64.sqrt()).sqrt()).abs() < 1e-15);
        assert!((tri.lambda.unwrap().powi(2) - 4.0 * PI / 3f64.sqrt()).abs() < 1e-13);
        let sq = PolygonConstants::area_pi(4).unwrap();
        assert!((sq.circumradius - (PI / 2.0).sqrt()).abs() < 1e-15);
        assert!(PolygonConstants::area_pi(5).unwrap().lambda.is_none());
        assert!(PolygonConstants::area_pi(2).is_err());
    }

    #[test]
    fn grid_sampling() {
        let spec = FieldSpec {
            x_min: 0.0,
            x_max: 1.0,
            y_min: 0.0,
            y_max: 1.0,
            nx: 2,
            ny: 2,
        };
        let field = sample_grid(Mode::Polygon(6), &spec).unwrap();
        assert_eq!(field.values.len(), 4);
        for j in 0..2 {
            for i in 0..2 {
                assert_eq!(field.at(i, j), f_n(6, PlanePoint::new(spec.x(i), spec.y(j))));
            }
        }
        let bad = FieldSpec { nx: 1, ..spec };
        assert!(sample_grid(Mode::Decagon, &bad).is_err());
        let mut csv = Vec::new();
        field.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("x,y,value\n0,0,1\n1,0,"));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn mode_names() {
        assert_eq!(Mode::from_name("fn", Some(7)).unwrap(), Mode::Polygon(7));
        assert!(Mode::from_name("fn", None).is_err());
        assert!(Mode::from_name("fn", Some(1)).is_err());
        assert!(matches!(Mode::from_name("star", None), Err(Error::UnknownMode(_))));
    }
}
