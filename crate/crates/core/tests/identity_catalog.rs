use std::f64::consts::PI;

use neumann_bessel_core::bessel::{bessel_j, EvalBudget};
use neumann_bessel_core::identities::{eval_sides, parseval_rhs, registry, residual, ParamPoint};
use neumann_bessel_core::polygon::fn_weight;
use neumann_bessel_core::quadrature::product_rhs_integral;
use num_complex::Complex64;
use proptest::prelude::*;

fn budget() -> EvalBudget {
    EvalBudget::default()
}

fn pt(pairs: &[(&str, f64)]) -> ParamPoint {
    ParamPoint::from_pairs(pairs)
}

fn rhs(id: &str, p: &ParamPoint) -> Complex64 {
    eval_sides(id, p, &budget()).unwrap().rhs.value
}

#[test]
fn every_record_certifies_on_its_default_grid() {
    let b = budget();
    for record in registry().records() {
        let (points, _) = record.default_points();
        assert!(!points.is_empty(), "{}", record.id);
        for p in points {
            let sides = eval_sides(record.id, &p, &b).unwrap();
            assert!(sides.lhs.value.re.is_finite() && sides.rhs.value.im.is_finite());
            assert!(
                sides.lhs.tail <= b.eps && sides.rhs.tail <= b.eps,
                "{} {p:?}",
                record.id
            );
            assert!(
                sides.residual() <= 10.0 * b.eps,
                "{} {p:?}: {}",
                record.id,
                sides.residual()
            );
        }
    }
}

#[test]
fn trivial_points_within_two_eps() {
    let b = budget();
    let cases: &[(&str, &[(&str, f64)])] = &[
        ("master", &[("n", 3.0), ("p", 0.0), ("z", 0.0), ("y", 0.2)]),
        ("cos4k", &[("z", 0.0), ("alpha", 1.0)]),
        ("jacobi-even", &[("z", 4.2), ("alpha", PI / 2.0)]),
        ("sq-ground", &[("r", 0.0), ("theta", 0.3)]),
        ("k2-4k", &[("z", 0.0)]),
        ("decagon", &[("z", 0.0), ("alpha", 0.4)]),
        ("hexagon-triangle", &[("z", 0.0), ("alpha", 0.4)]),
    ];
    for (id, pairs) in cases {
        assert!(residual(id, &pt(pairs), &b).unwrap() <= 2.0 * b.eps, "{id}");
    }
}

#[test]
fn derivative_records_match_finite_differences() {
    let h = 1e-5;
    for z in [0.5, 2.0, 6.0, 11.0] {
        for alpha in [0.2, 0.5, 1.3, 2.4] {
            let parent = |a: f64| rhs("cos4k", &pt(&[("z", z), ("alpha", a)])).re;
            let fd = (parent(alpha + h) - parent(alpha - h)) / (2.0 * h);
            let d = rhs("deriv-4k", &pt(&[("z", z), ("alpha", alpha)])).re;
            assert!((d + fd / 8.0).abs() <= 1e-8, "z={z} alpha={alpha}");
        }
        let parent = |a: f64| rhs("fold-2n", &pt(&[("n", 1.0), ("z", z), ("alpha", a)])).re;
        let fd = (parent(PI / 4.0 + h) - parent(PI / 4.0 - h)) / (2.0 * h);
        let d = rhs("deriv-2k", &pt(&[("z", z)])).re;
        assert!((d - fd / 2.0).abs() <= 1e-8, "z={z}");
    }
}

#[test]
fn fourfold_derivative_example_three_ways() {
    let (z, alpha, h) = (6.0, 0.5, 1e-5);
    let sides = eval_sides("deriv-4k", &pt(&[("z", z), ("alpha", alpha)]), &budget()).unwrap();
    assert!(sides.residual() <= 1e-10);
    let parent = |a: f64| {
        eval_sides("cos4k", &pt(&[("z", z), ("alpha", a)]), &budget())
            .unwrap()
            .lhs
            .value
            .re
    };
    let fd = -(parent(alpha + h) - parent(alpha - h)) / (2.0 * h) / 8.0;
    assert!((sides.lhs.value.re - fd).abs() <= 1e-8);
}

#[test]
fn triangle_weight_equals_reduced_polygon_weight() {
    for k in 1..=100u64 {
        let triangle = ((k % 4) as f64 * PI / 2.0 - PI / 6.0).cos() / (PI / 6.0).cos();
        assert!((fn_weight(3, k) - triangle).abs() <= 1e-15);
    }
}

#[test]
fn parseval_completeness() {
    for n in 2..=8u64 {
        for x in [0.0, 0.8, 3.0, 7.5, 14.0, 20.0] {
            let total: f64 = (0..n as i64).map(|p| parseval_rhs(n, p, x).unwrap()).sum();
            assert!((total - 1.0).abs() <= 1e-11, "n={n} x={x}");
        }
    }
}

#[test]
fn graf_degeneration() {
    let b = budget();
    for (p, q) in [(0, 2), (1, 1), (3, -1), (-2, 4)] {
        for (z, t) in [(0.7, 0.0), (2.3, 0.4), (6.0, 1.3)] {
            let samez = eval_sides(
                "product-samez",
                &pt(&[("n", 1.0), ("p", p as f64), ("q", q as f64), ("z", z), ("t", t)]),
                &b,
            )
            .unwrap();
            let graf = eval_sides("graf-n1", &pt(&[("p", (p + q) as f64), ("z", z), ("t", t)]), &b).unwrap();
            let relabel = Complex64::from_polar(1.0, -2.0 * p as f64 * t);
            assert!((samez.lhs.value - relabel * graf.lhs.value).norm() <= 1e-11);
            assert!((samez.rhs.value - relabel * graf.rhs.value).norm() <= 1e-11);
        }
    }
    for p in [0, 1, 4] {
        for z in [0.5, 3.0, 9.0] {
            let s = eval_sides("graf-n1", &pt(&[("p", p as f64), ("z", z), ("t", 0.0)]), &b).unwrap();
            assert!((s.lhs.value.re - bessel_j(p, 2.0 * z).unwrap()).abs() <= 1e-10);
        }
    }
}

#[test]
fn product_integral_two_argument_example() {
    // J_0(z)J_0(z') + 2 Σ_{k≥1} J_{4k}(z)J_{4k}(z') with the fourfold product
    // closed form substituted: ¼[J_0(z+z') + J_0(z−z') + 2J_0(√(z²+z'²))].
    let (z, zp) = (2.0f64, 3.0f64);
    let v = product_rhs_integral(4, 0, 0, z, zp, 0.0).unwrap();
    let j0 = |x: f64| bessel_j(0, x).unwrap();
    let expected = 0.25 * (j0(z + zp) + j0(z - zp) + 2.0 * j0(z.hypot(zp)));
    assert!((v.re - expected).abs() <= 1e-10 && v.im.abs() <= 1e-10);
    let new_example = rhs("product-4k-new", &pt(&[("x", z), ("y", zp)])).re;
    assert!((v.re - (j0(z) * j0(zp) + 2.0 * new_example)).abs() <= 1e-10);
}

#[test]
fn product_integral_matches_equal_argument_forms() {
    let b = budget();
    for n in [1.0, 2.0] {
        for z in [0.5, 2.0, 5.0] {
            let integral = rhs("product-zzp", &pt(&[("n", n), ("z", z), ("zp", z)]));
            let finite = rhs(
                "product-samez",
                &pt(&[("n", n), ("p", 0.0), ("q", 0.0), ("z", z), ("t", 0.0)]),
            );
            assert!((integral - finite).norm() <= 1e-10);
            assert!(residual("product-zzp", &pt(&[("n", n), ("z", z), ("zp", z)]), &b).unwrap() <= 1e-10);
        }
    }
}

#[test]
fn half_turn_product_excludes_opposite_residues() {
    let r = eval_sides("product-t-half", &pt(&[("p", 2.0), ("q", -2.0), ("z", 1.0)]), &budget());
    assert!(r.is_err());
    let record = registry().get("product-t-half").unwrap();
    let (_, skipped) = record.default_points();
    assert!(skipped > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn angle_identities_hold_off_grid(z in -20.0f64..20.0, alpha in -6.0f64..6.0) {
        let b = budget();
        for id in ["jacobi-even", "jacobi-odd", "jacobi-even-shift", "jacobi-odd-shift", "cos4k", "deriv-4k", "hexagon-triangle", "decagon"] {
            let r = residual(id, &pt(&[("z", z), ("alpha", alpha)]), &b).unwrap();
            prop_assert!(r <= 1e-10, "{} z={} alpha={} residual={}", id, z, alpha, r);
        }
    }

    #[test]
    fn fold_identities_hold_off_grid(n in 1u32..=10, z in 0.0f64..20.0, alpha in -4.0f64..4.0) {
        let b = budget();
        for id in ["ext-alpha", "fold-2n"] {
            let r = residual(id, &pt(&[("n", n as f64), ("z", z), ("alpha", alpha)]), &b).unwrap();
            prop_assert!(r <= 1e-10, "{} residual={}", id, r);
        }
        for id in ["odd-fold-even", "odd-fold-odd"] {
            let r = residual(id, &pt(&[("n", (n % 6) as f64), ("z", z), ("alpha", alpha)]), &b).unwrap();
            prop_assert!(r <= 1e-10, "{} residual={}", id, r);
        }
    }

    #[test]
    fn product_master_holds_off_grid(n in 1u32..=5, p in -3i32..=4, q in -3i32..=4, z in 0.0f64..8.0, zp in 0.0f64..8.0, t in -2.0f64..2.0) {
        let p = pt(&[("n", n as f64), ("p", p as f64), ("q", q as f64), ("z", z), ("zp", zp), ("t", t)]);
        prop_assert!(residual("product-master", &p, &budget()).unwrap() <= 1e-10);
    }

    #[test]
    fn parseval_holds_off_grid(n in 1u32..=10, p in -5i32..=10, x in 0.0f64..20.0) {
        let p = pt(&[("n", n as f64), ("p", p as f64), ("x", x)]);
        prop_assert!(residual("parseval-general", &p, &budget()).unwrap() <= 1e-11);
    }

    #[test]
    fn rational_holds_off_grid(a in 0.1f64..20.0, z in -20.0f64..20.0) {
        let b = budget();
        for id in ["rational-even", "rational-odd"] {
            let r = residual(id, &pt(&[("a", a), ("z", z)]), &b).unwrap();
            prop_assert!(r <= 1e-10, "{} residual={}", id, r);
        }
    }
}
