use neumann_bessel_core::bessel::{bessel_j, bessel_row, tail_bound, truncation_index};
use neumann_bessel_core::quadrature::{bessel_fourier_oracle, bessel_series_oracle, bisect_root};
use proptest::prelude::*;

#[test]
fn recurrence_agrees_with_fourier_integral_on_grid() {
    for m in 0..=30i64 {
        for i in 0..=30 {
            let z = i as f64;
            let a = bessel_j(m, z).unwrap();
            let b = bessel_fourier_oracle(m, z).unwrap();
            assert!((a - b).abs() <= 1e-11, "m={m} z={z}: {a} vs {b}");
        }
    }
}

#[test]
fn recurrence_agrees_with_ascending_series() {
    for m in [0u32, 1, 2, 5, 10, 20, 30, 60, 120, 200] {
        for z in [0.1, 1.0, 3.7, 10.0, 25.0, 40.0, 50.0] {
            let a = bessel_j(m as i64, z).unwrap();
            let b = bessel_series_oracle(m, z).unwrap();
            // Alternating terms peak near e^z/(2πz); at z = 50 that is ~1e19 and
            // the double-double partial sums keep only ~1e-13 absolute.
            let tol = if z > 40.0 { 1e-12 } else { 1e-13 };
            assert!((a - b).abs() <= tol, "m={m} z={z}: {a} vs {b}");
        }
    }
}

#[test]
fn first_zero_of_j0_from_series_oracle() {
    let root = bisect_root(|z| bessel_series_oracle(0, z), 2.0, 3.0, 1e-15).unwrap();
    assert!((root - 2.404825557695773).abs() < 1e-14);
    assert!(bessel_j(0, 2.404825557695773).unwrap().abs() <= 1e-12);
}

#[test]
fn row_normalisation_at_ten() {
    let row = bessel_row(60, 10.0).unwrap();
    let s: f64 = row[0] * row[0] + 2.0 * row[1..].iter().map(|v| v * v).sum::<f64>();
    assert!((s - 1.0).abs() <= 1e-12);
}

#[test]
fn tail_bounds_dominate_direct_tails() {
    let direct = |n: i64, p: i64, z: f64, k0: i64| -> f64 {
        (k0..60)
            .flat_map(|k| [k * n + p, -k * n + p])
            .map(|m| bessel_j(m, z).unwrap().abs())
            .sum()
    };
    let b = tail_bound(4, 0, 1.0, 3).unwrap();
    assert!(b >= direct(4, 0, 1.0, 3) && b <= 1e-9);
    let b = tail_bound(6, 3, 20.0, 2).unwrap();
    assert!(b.is_finite() && b > 0.0 && b >= direct(6, 3, 20.0, 2));
}

#[test]
fn truncation_bound_decreases() {
    let k = truncation_index(2, 1, 30.0, 1e-10).unwrap();
    assert!(2 * k + 1 > 30);
    let mut last = f64::INFINITY;
    for k_start in k..k + 10 {
        let b = tail_bound(2, 1, 30.0, k_start).unwrap();
        assert!(b <= last);
        last = b;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parity_exact(m in -50i64..=50, z in prop::sample::select(vec![0.1, 1.0, 5.0, 20.0])) {
        let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(bessel_j(-m, z).unwrap(), sign * bessel_j(m, z).unwrap());
    }

    #[test]
    fn recurrence_residual(m in -49i64..=49, z in 0.05f64..40.0) {
        let jm = bessel_j(m, z).unwrap();
        let lhs = bessel_j(m - 1, z).unwrap() + bessel_j(m + 1, z).unwrap();
        prop_assert!((lhs - 2.0 * m as f64 / z * jm).abs() <= 1e-11 * jm.abs().max(1.0));
    }

    #[test]
    fn nielsen_majorant_holds(m in 0u64..80, z in -30.0f64..30.0) {
        let j = bessel_j(m as i64, z).unwrap().abs();
        prop_assert!(j <= neumann_bessel_core::bessel::nielsen_majorant(m, z) * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn squares_sum_to_one(z in 0.0f64..30.0) {
        let k = truncation_index(1, 0, z, 1e-14).unwrap() as usize;
        let row = bessel_row(k + 1, z).unwrap();
        let s: f64 = row[0] * row[0] + 2.0 * row[1..=k].iter().map(|v| v * v).sum::<f64>();
        prop_assert!((s - 1.0).abs() <= 1e-11);
    }
}
