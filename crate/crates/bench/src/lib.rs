//! Shared workloads for the benchmarks.

use std::f64::consts::PI;

use neumann_bessel_core::{FieldSpec, SeriesSpec};

/// The master-formula grid: `n ≤ 12`, every residue, eight arguments up to 30.
pub fn master_grid() -> Vec<SeriesSpec> {
    let zs = [0.0, 0.5, 1.0, 2.5, 5.0, 10.0, 20.0, 30.0];
    let ys = [0.0, 0.3, PI / 4.0, 1.1, PI / 2.0, 1.9, 2.6, PI];
    let mut specs = Vec::new();
    for n in 1..=12u64 {
        for p in 0..=n as i64 {
            for z in zs {
                for y in ys {
                    specs.push(SeriesSpec::new(n, p, z, y).expect("grid point is valid"));
                }
            }
        }
    }
    specs
}

/// A square field of side `2·half` at `side × side` resolution.
pub fn square_field(half: f64, side: usize) -> FieldSpec {
    FieldSpec {
        x_min: -half,
        x_max: half,
        y_min: -half,
        y_max: half,
        nx: side,
        ny: side,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_valid() {
        assert_eq!(master_grid().len(), (2..=13).sum::<usize>() * 64);
        assert!(square_field(6.0, 128).validate().is_ok());
    }
}
