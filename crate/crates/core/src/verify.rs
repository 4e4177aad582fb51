//! Parameter sweeps over the identity registry plus the polygon checks,
//! reduced into deterministic reports.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::bessel::{bessel_j, EvalBudget};
use crate::error::{Error, Result};
use crate::format::fmt17;
use crate::identities::{self, cartesian, eval_sides, triangle_variant, IdentityRecord, ParamPoint};
use crate::polygon::{
    boundary_samples, certify_orientation, f_n, f_n_polar, saddle_rings, separatrix_value, square_ground,
    triangle_ground, Mode, OrientationCheck, PlanePoint, PolygonConstants, PolygonOrientation, TriangleSigns,
};
use crate::quadrature::{bessel_series_oracle, bisect_root};
use crate::series::{master_rhs, SeriesSpec};

/// Pass cutoff as a multiple of the evaluation tolerance.
pub const DEFAULT_THRESHOLD_FACTOR: f64 = 100.0;

#[derive(Debug, Clone, PartialEq)]
pub enum IdSelection {
    All,
    List(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    List(Vec<f64>),
    /// `count` evenly spaced values from `min` to `max` inclusive.
    Linear {
        min: f64,
        max: f64,
        count: usize,
    },
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            GridSpec::List(ref v) => v.clone(),
            GridSpec::Linear { min, max, count } => match count {
                0 => Vec::new(),
                1 => vec![min],
                _ => (0..count)
                    .map(|i| min + (max - min) * i as f64 / (count - 1) as f64)
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub ids: IdSelection,
    /// Grid overrides by parameter name; other parameters use each record's
    /// default grid.
    pub grids: BTreeMap<String, GridSpec>,
    pub budget: EvalBudget,
    pub threshold: f64,
}

impl SweepConfig {
    pub fn new(ids: IdSelection, budget: EvalBudget) -> Self {
        Self {
            ids,
            grids: BTreeMap::new(),
            budget,
            threshold: DEFAULT_THRESHOLD_FACTOR * budget.eps,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.threshold >= 0.0 && self.threshold.is_finite()) {
            return Err(Error::Config(format!(
                "threshold must be finite and ≥ 0, got {}",
                self.threshold
            )));
        }
        if let IdSelection::List(ids) = &self.ids {
            if ids.is_empty() {
                return Err(Error::Config("no identity ids selected".into()));
            }
        }
        for (name, grid) in &self.grids {
            let values = grid.values();
            if values.is_empty() {
                return Err(Error::Config(format!("grid for {name} is empty")));
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(Error::Config(format!("grid for {name} has non-finite values")));
            }
        }
        Ok(())
    }

    fn records(&self) -> Result<Vec<&'static IdentityRecord>> {
        let registry = identities::registry();
        match &self.ids {
            IdSelection::All => Ok(registry.records().iter().collect()),
            IdSelection::List(ids) => ids.iter().map(|id| registry.get(id)).collect(),
        }
    }

    fn points(&self, record: &IdentityRecord) -> (Vec<ParamPoint>, usize) {
        if self.grids.is_empty() {
            return record.default_points();
        }
        let grids: Vec<(&str, Vec<f64>)> = record
            .params
            .iter()
            .map(|p| {
                (
                    p.name,
                    self.grids
                        .get(p.name)
                        .map(GridSpec::values)
                        .unwrap_or_else(|| p.grid.clone()),
                )
            })
            .collect();
        let borrowed: Vec<(&str, &[f64])> = grids.iter().map(|(n, v)| (*n, v.as_slice())).collect();
        let all = cartesian(&borrowed);
        let total = all.len();
        let kept: Vec<_> = all.into_iter().filter(|pt| record.admits(pt)).collect();
        let skipped = total - kept.len();
        (kept, skipped)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl From<num_complex::Complex64> for Complex {
    fn from(c: num_complex::Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRecord {
    pub id: String,
    pub params: ParamPoint,
    pub lhs: Option<Complex>,
    pub rhs: Option<Complex>,
    pub residual: Option<f64>,
    pub tail_bound: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstPoint {
    pub id: String,
    pub params: ParamPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub count: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub worst_point: Option<WorstPoint>,
    /// Grid points outside an identity's domain, not evaluated.
    pub skipped: usize,
    pub threshold: f64,
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub summary: Summary,
    pub records: Vec<ResidualRecord>,
}

impl ResidualReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Flat CSV: `id`, one column per parameter name (in first-seen order),
    /// then `lhs_re,lhs_im,rhs_re,rhs_im,residual,pass`.
    pub fn to_csv(&self) -> String {
        let mut names: Vec<&str> = Vec::new();
        for r in &self.records {
            for (name, _) in r.params.iter() {
                if !names.contains(&name) {
                    names.push(name);
                }
            }
        }
        let mut out = String::from("id");
        for name in &names {
            out.push(',');
            out.push_str(name);
        }
        out.push_str(",lhs_re,lhs_im,rhs_re,rhs_im,residual,pass\n");
        let opt = |v: Option<f64>| v.map(fmt17).unwrap_or_default();
        for r in &self.records {
            out.push_str(&r.id);
            for name in &names {
                out.push(',');
                out.push_str(&r.params.get(name).map(fmt17).unwrap_or_default());
            }
            let fields = [
                opt(r.lhs.map(|c| c.re)),
                opt(r.lhs.map(|c| c.im)),
                opt(r.rhs.map(|c| c.re)),
                opt(r.rhs.map(|c| c.im)),
                opt(r.residual),
            ];
            for f in fields {
                out.push(',');
                out.push_str(&f);
            }
            out.push_str(if r.pass { ",true\n" } else { ",false\n" });
        }
        out
    }
}

fn evaluate(record: &IdentityRecord, pt: ParamPoint, cfg: &SweepConfig) -> ResidualRecord {
    match eval_sides(record.id, &pt, &cfg.budget) {
        Ok(sides) => {
            let residual = sides.residual();
            ResidualRecord {
                id: record.id.to_string(),
                params: pt,
                lhs: Some(sides.lhs.value.into()),
                rhs: Some(sides.rhs.value.into()),
                residual: Some(residual),
                tail_bound: Some(sides.tail()),
                pass: residual <= cfg.threshold,
                error: None,
            }
        }
        Err(e) => ResidualRecord {
            id: record.id.to_string(),
            params: pt,
            lhs: None,
            rhs: None,
            residual: None,
            tail_bound: None,
            pass: false,
            error: Some(e.to_string()),
        },
    }
}

/// Evaluates every selected identity over its Cartesian grid. Points run in
/// parallel; records keep (registry, grid) order.
pub fn sweep(cfg: &SweepConfig) -> Result<ResidualReport> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    let mut skipped = 0;
    for record in cfg.records()? {
        let (points, s) = cfg.points(record);
        skipped += s;
        jobs.extend(points.into_iter().map(|pt| (record, pt)));
    }
    let records: Vec<ResidualRecord> = jobs
        .into_par_iter()
        .map(|(record, pt)| evaluate(record, pt, cfg))
        .collect();

    let failures = records.iter().filter(|r| !r.pass).count();
    let mut max_residual = 0.0;
    let mut worst_point = None;
    for r in &records {
        let v = r.residual.unwrap_or(f64::INFINITY);
        if worst_point.is_none() || v > max_residual {
            max_residual = v;
            worst_point = Some(WorstPoint {
                id: r.id.clone(),
                params: r.params.clone(),
            });
        }
    }
    Ok(ResidualReport {
        summary: Summary {
            count: records.len(),
            failures,
            max_residual,
            worst_point,
            skipped,
            threshold: cfg.threshold,
            eps: cfg.budget.eps,
        },
        records,
    })
}

/// A scalar check: `measured` against `tolerance` in the stated direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    /// `true` when the check requires `measured ≥ tolerance`.
    pub at_least: bool,
    pub pass: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            at_least: false,
            pass: measured <= tolerance,
        }
    }

    fn at_least(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            at_least: true,
            pass: measured >= tolerance,
        }
    }
}

/// Deterministic scattered points in `[-half, half]²` from the additive
/// golden-ratio sequence.
pub fn scattered_points(count: usize, half: f64) -> Vec<PlanePoint> {
    let (a1, a2) = (0.754_877_666_246_692_7, 0.569_840_290_998_053_3);
    (1..=count)
        .map(|i| {
            let u = (0.5 + a1 * i as f64).fract();
            let v = (0.5 + a2 * i as f64).fract();
            PlanePoint::new(half * (2.0 * u - 1.0), half * (2.0 * v - 1.0))
        })
        .collect()
}

/// Stencil residuals at `h` and `h/2` for a set of points: the largest
/// residual at `h`, and the smallest and largest ratio between the two.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StencilConvergence {
    pub max_residual: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

pub fn stencil_convergence(mode: Mode, points: &[PlanePoint], h: f64) -> StencilConvergence {
    let waves = mode.waves();
    let mut out = StencilConvergence {
        max_residual: 0.0,
        min_ratio: f64::INFINITY,
        max_ratio: 0.0,
    };
    for &pt in points {
        let coarse = waves.laplacian_residual(pt, h);
        let fine = waves.laplacian_residual(pt, h / 2.0);
        out.max_residual = out.max_residual.max(coarse);
        if fine > 0.0 && coarse > 1e-300 {
            let ratio = coarse / fine;
            out.min_ratio = out.min_ratio.min(ratio);
            out.max_ratio = out.max_ratio.max(ratio);
        }
    }
    out
}

/// Largest `|Σ_{p<n} (parseval right side)(p) − 1|` over `x` in `xs`.
pub fn parseval_completeness(n: u64, xs: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &x in xs {
        let mut total = crate::sum::CompensatedSum::new();
        for p in 0..n as i64 {
            total.add(identities::parseval_rhs(n, p, x)?);
        }
        worst = worst.max((total.value() - 1.0).abs());
    }
    Ok(worst)
}

/// Largest `|Re master_rhs(n, 0, z, π/2 + θ) − J_0(z)|` over the given grid.
pub fn riemann_limit_error(n: u64, zs: &[f64], thetas: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &z in zs {
        let j0 = bessel_j(0, z)?;
        for &theta in thetas {
            let rhs = master_rhs(&SeriesSpec::new(n, 0, z, PI / 2.0 + theta)?)?;
            worst = worst.max((rhs.re - j0).abs());
        }
    }
    Ok(worst)
}

/// Largest `|f_6 + 1/3 − (2/3)cos(x/2)[cos(x/2) + cos(√3y/2)]|` on an
/// `m × m` grid over `[-half, half]²`.
pub fn kagome_defect(m: usize, half: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let x = -half + 2.0 * half * i as f64 / (m - 1) as f64;
            let y = -half + 2.0 * half * j as f64 / (m - 1) as f64;
            let pt = PlanePoint::new(x, y);
            let c = (x / 2.0).cos();
            let factor = 2.0 / 3.0 * c * (c + (3f64.sqrt() * y / 2.0).cos());
            worst = worst.max((f_n(6, pt) + 1.0 / 3.0 - factor).abs());
        }
    }
    worst
}

/// Which printed value (if any) a computed constant reproduces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateMatch {
    pub label: String,
    pub printed: f64,
    pub difference: f64,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparatrixFinding {
    pub n: u32,
    pub value: f64,
    pub accuracy: f64,
    pub ring_radius: f64,
    pub saddle_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RingFinding {
    pub radius: f64,
    pub value: f64,
    pub count: usize,
}

/// Sevenfold separatrix compared with the two printed candidates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SevenfoldFinding {
    pub innermost: SeparatrixFinding,
    pub candidates: Vec<CandidateMatch>,
    /// Label of the candidate within tolerance of the innermost ring, if any.
    pub matched: Option<String>,
    /// Saddle rings within the search radius, innermost first, with the
    /// candidates each reproduces.
    pub rings: Vec<(RingFinding, Vec<String>)>,
}

pub const SEVENFOLD_CANDIDATES: [(&str, f64); 2] = [("0.19633", 0.19633), ("-1.9633", -1.9633)];
pub const SEVENFOLD_TOLERANCE: f64 = 1e-4;

pub fn sevenfold_finding() -> Result<SevenfoldFinding> {
    let inner = separatrix_value(7)?;
    let compare = |value: f64| -> Vec<CandidateMatch> {
        SEVENFOLD_CANDIDATES
            .iter()
            .map(|&(label, printed)| {
                let difference = (value - printed).abs();
                CandidateMatch {
                    label: label.to_string(),
                    printed,
                    difference,
                    matches: difference <= SEVENFOLD_TOLERANCE,
                }
            })
            .collect()
    };
    let candidates = compare(inner.value);
    let matched = candidates.iter().find(|c| c.matches).map(|c| c.label.clone());
    let rings = saddle_rings(7, crate::polygon::DEFAULT_SEARCH_RADIUS)?
        .into_iter()
        .map(|r| {
            let labels = compare(r.value)
                .into_iter()
                .filter(|c| c.matches)
                .map(|c| c.label)
                .collect();
            (
                RingFinding {
                    radius: r.radius,
                    value: r.value,
                    count: r.count,
                },
                labels,
            )
        })
        .collect();
    Ok(SevenfoldFinding {
        innermost: separatrix_finding(&inner),
        candidates,
        matched,
        rings,
    })
}

fn separatrix_finding(s: &crate::polygon::Separatrix) -> SeparatrixFinding {
    SeparatrixFinding {
        n: s.n,
        value: s.value,
        accuracy: s.accuracy,
        ring_radius: s.ring_radius,
        saddle_count: s.saddles.len(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleFinding {
    pub signs: TriangleSigns,
    pub max_residual: f64,
    pub candidates: Vec<(TriangleSigns, f64)>,
    pub orientation: OrientationCheck,
}

/// Radial zeros of the fivefold mode next to the first zero of `J_5`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecagonNodalFinding {
    pub j5_first_zero: f64,
    /// `(α, r)` of the zero found along each ray.
    pub ray_zeros: Vec<(f64, f64)>,
    pub max_deviation: f64,
}

pub fn decagon_nodal_finding() -> Result<DecagonNodalFinding> {
    let j5_first_zero = bisect_root(|r| bessel_series_oracle(5, r), 8.0, 9.5, 1e-14)?;
    let mut ray_zeros = Vec::new();
    let mut max_deviation: f64 = 0.0;
    // Rays between the nodal diameters of cos(5α).
    for alpha in [0.0, PI / 5.0, 2.0 * PI / 5.0, 0.1, 0.5] {
        let f = |r: f64| Ok(Mode::Decagon.value(PlanePoint::from_polar(r, alpha)));
        let root = bisect_root(f, j5_first_zero - 1.0, j5_first_zero + 1.0, 1e-13)?;
        max_deviation = max_deviation.max((root - j5_first_zero).abs());
        ray_zeros.push((alpha, root));
    }
    Ok(DecagonNodalFinding {
        j5_first_zero,
        ray_zeros,
        max_deviation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Findings {
    pub separatrix: Vec<SeparatrixFinding>,
    pub sevenfold: SevenfoldFinding,
    pub triangle: TriangleFinding,
    pub square_orientation: OrientationCheck,
    pub decagon_nodal_line: DecagonNodalFinding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub status: Status,
    pub identities: ResidualReport,
    pub checks: Vec<Check>,
    pub findings: Findings,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Full certification: the registry over its default grids plus polygon
/// invariants and separatrix findings.
pub fn verify_all(budget: EvalBudget, threshold: f64) -> Result<VerifyReport> {
    let mut cfg = SweepConfig::new(IdSelection::All, budget);
    cfg.threshold = threshold;
    let report = sweep(&cfg)?;

    let mut checks = Vec::new();
    let scattered = scattered_points(20, 6.0);
    let modes = [2, 5, 6, 7, 10]
        .map(Mode::Polygon)
        .into_iter()
        .chain([Mode::HexagonTriangle, Mode::Decagon]);
    for mode in modes {
        let c = stencil_convergence(mode, &scattered, 1e-3);
        checks.push(Check::at_most(
            format!("laplacian {} h=1e-3", mode.name()),
            c.max_residual,
            1e-5,
        ));
        checks.push(Check::at_least(
            format!("laplacian {} halving ratio min", mode.name()),
            c.min_ratio,
            3.2,
        ));
        checks.push(Check::at_most(
            format!("laplacian {} halving ratio max", mode.name()),
            c.max_ratio,
            4.8,
        ));
    }

    checks.push(Check::at_most(
        "kagome factorisation 100x100",
        kagome_defect(100, 12.0),
        1e-13,
    ));

    let square = certify_orientation(4, PolygonConstants::area_pi(4)?.circumradius, 25, square_ground);
    let square_best = square.vertex_on_axis_max.min(square.edge_midpoint_on_axis_max);
    checks.push(Check::at_most("square boundary vanishing", square_best, 1e-12));

    let tri = triangle_variant();
    let tri_radius = PolygonConstants::area_pi(3)?.circumradius;
    let tri_orientation = certify_orientation(3, tri_radius, 40, |p| triangle_ground(p, tri.signs));
    let tri_best = tri_orientation
        .vertex_on_axis_max
        .min(tri_orientation.edge_midpoint_on_axis_max);
    checks.push(Check::at_most("triangle boundary vanishing", tri_best, 1e-9));

    for n in 5..=8u32 {
        let r = PolygonConstants::area_pi(n)?.circumradius;
        let worst = boundary_samples(n, r, PolygonOrientation::VertexOnAxis, 50)
            .into_iter()
            .map(|p| f_n(n, p).abs())
            .fold(0.0, f64::max);
        checks.push(Check::at_least(format!("f{n} non-vanishing on boundary"), worst, 1e-3));
    }

    let xs = [0.0, 0.5, 1.0, 2.5, 5.0, 10.0, 20.0];
    for n in 2..=8u64 {
        checks.push(Check::at_most(
            format!("parseval completeness n={n}"),
            parseval_completeness(n, &xs)?,
            1e-11,
        ));
    }

    let mut forms: f64 = 0.0;
    for n in 2..=12u32 {
        for pt in &scattered {
            forms = forms.max((f_n(n, *pt) - f_n_polar(n, pt.r(), pt.theta())).abs());
        }
    }
    checks.push(Check::at_most("f_n polar and cartesian forms", forms, 1e-13));

    let riemann = riemann_limit_error(64, &[0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0], &[0.0, 0.3, 1.1, 2.6])?;
    checks.push(Check::at_most("riemann limit n=64", riemann, 1e-10));

    let c6 = separatrix_value(6)?;
    let c5 = separatrix_value(5)?;
    checks.push(Check::at_most(
        "separatrix C6 = -1/3",
        (c6.value + 1.0 / 3.0).abs(),
        1e-10,
    ));
    checks.push(Check::at_most(
        "separatrix C5 = -0.334909",
        (c5.value + 0.334909).abs(),
        1e-5,
    ));

    let findings = Findings {
        separatrix: [&c5, &c6].iter().map(|s| separatrix_finding(s)).collect(),
        sevenfold: sevenfold_finding()?,
        triangle: TriangleFinding {
            signs: tri.signs,
            max_residual: tri.max_residual,
            candidates: tri.candidates.clone(),
            orientation: tri_orientation,
        },
        square_orientation: square,
        decagon_nodal_line: decagon_nodal_finding()?,
    };

    let pass = report.summary.failures == 0 && checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        status: if pass { Status::Pass } else { Status::Fail },
        identities: report,
        checks,
        findings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> EvalBudget {
        EvalBudget::default()
    }

    #[test]
    fn master_sweep_example() {
        let mut cfg = SweepConfig::new(IdSelection::List(vec!["master".into()]), budget());
        cfg.threshold = 1e-10;
        cfg.grids.insert("n".into(), GridSpec::List(vec![1.0, 2.0, 3.0, 4.0]));
        cfg.grids.insert(
            "p".into(),
            GridSpec::Linear {
                min: 0.0,
                max: 4.0,
                count: 5,
            },
        );
        cfg.grids.insert("z".into(), GridSpec::List(vec![0.0, 1.0, 5.0]));
        cfg.grids.insert("y".into(), GridSpec::List(vec![0.0, 1.0]));
        let report = sweep(&cfg).unwrap();
        assert_eq!(report.summary.count, 4 * 5 * 3 * 2);
        assert_eq!(report.summary.failures, 0);
    }

    #[test]
    fn cos4k_at_origin() {
        let mut cfg = SweepConfig::new(IdSelection::List(vec!["cos4k".into()]), budget());
        cfg.grids.insert("z".into(), GridSpec::List(vec![0.0]));
        let report = sweep(&cfg).unwrap();
        assert!(report.records.iter().all(|r| r.residual.unwrap() <= 2e-12));
    }

    #[test]
    fn config_errors() {
        let mut cfg = SweepConfig::new(IdSelection::All, budget());
        cfg.grids.insert("z".into(), GridSpec::List(vec![]));
        assert!(matches!(sweep(&cfg), Err(Error::Config(_))));
        let cfg = SweepConfig::new(IdSelection::List(vec!["missing".into()]), budget());
        assert!(matches!(sweep(&cfg), Err(Error::UnknownIdentity(_))));
        let mut cfg = SweepConfig::new(IdSelection::All, budget());
        cfg.threshold = f64::NAN;
        assert!(matches!(sweep(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn summary_integrity() {
        let mut cfg = SweepConfig::new(IdSelection::List(vec!["jacobi-odd".into(), "k2-4k".into()]), budget());
        cfg.threshold = 1e-14;
        let report = sweep(&cfg).unwrap();
        let max = report.records.iter().map(|r| r.residual.unwrap()).fold(0.0, f64::max);
        assert_eq!(report.summary.max_residual, max);
        assert_eq!(
            report.summary.failures,
            report.records.iter().filter(|r| r.residual.unwrap() > 1e-14).count()
        );
    }

    #[test]
    fn csv_flattening() {
        let mut cfg = SweepConfig::new(IdSelection::List(vec!["k2-4k".into()]), budget());
        cfg.grids.insert("z".into(), GridSpec::List(vec![0.0, 1.0]));
        let csv = sweep(&cfg).unwrap().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "id,z,lhs_re,lhs_im,rhs_re,rhs_im,residual,pass");
        assert!(lines[1].starts_with("k2-4k,0,0,0,0,0,0,true"));
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn linear_grid() {
        assert_eq!(
            GridSpec::Linear {
                min: 0.0,
                max: 1.0,
                count: 3
            }
            .values(),
            vec![0.0, 0.5, 1.0]
        );
        assert_eq!(
            GridSpec::Linear {
                min: 2.0,
                max: 9.0,
                count: 1
            }
            .values(),
            vec![2.0]
        );
    }

    #[test]
    fn sevenfold_rings() {
        let f = sevenfold_finding().unwrap();
        assert!(f.matched.is_none());
        assert!((f.innermost.value + 0.397489).abs() < 1e-5);
        assert!(f.rings.iter().any(|(_, labels)| labels.iter().any(|l| l == "0.19633")));
    }

    #[test]
    fn decagon_nodal_line_near_j5_zero() {
        let f = decagon_nodal_finding().unwrap();
        assert!((f.j5_first_zero - 8.771483815959954).abs() < 1e-12);
        assert!(f.max_deviation < 0.5);
    }
}
