//! Certified evaluation of Neumann series of Bessel functions over residue
//! classes, and of the polygon-adapted Laplacian eigenfunctions they sum to.

pub mod bessel;
pub mod ddouble;
pub mod error;
pub mod format;
pub mod identities;
pub mod polygon;
pub mod quadrature;
pub mod series;
pub mod sum;
pub mod verify;

pub use bessel::{bessel_j, bessel_row, tail_bound, truncation_index, BesselOrder, EvalBudget};
pub use error::{Error, Result};
pub use format::fmt17;
pub use identities::{eval_sides, list_identities, registry_json, residual, IdentityRecord, ParamPoint, Sides};
pub use polygon::{
    f_n, find_saddles, grad_f, laplacian_residual, sample_grid, separatrix_value, special_mode, CriticalPoint,
    FieldSpec, HessianClass, Mode, PlanePoint, ScalarField,
};
pub use series::{master_lhs, master_rhs, weighted_series, Certified, CoefficientRule, ComplexValue, SeriesSpec};
pub use verify::{sweep, verify_all, GridSpec, IdSelection, ResidualReport, Status, SweepConfig, VerifyReport};
