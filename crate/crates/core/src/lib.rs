//! Spectral theory of Jacobi matrices with coefficients of bounded variation.
//!
//! The crate covers the periodic case exactly (discriminants, bands, gaps,
//! q-interiors), the transfer-matrix machinery for slowly varying sequences,
//! eventually periodic approximants with their explicit a.c. densities, two
//! counterexample constructions and a set of growth and counting diagnostics.
//!
//! ```
//! use jbv::{band_structure, PeriodicJacobi};
//!
//! let p = PeriodicJacobi::new(vec![1.0, 1.0], vec![0.0, 0.5]).unwrap();
//! let bs = band_structure(&p, 1e-10).unwrap();
//! assert!(bs.gaps[0].open);
//! assert!((bs.gaps[0].hi - 0.5).abs() < 1e-9);
//! ```

pub mod approximant;
pub mod cli;
pub mod coefficients;
pub mod constructions;
pub mod diagnostics;
pub mod error;
pub mod interval;
pub mod matrix;
pub mod periodic;
pub mod polynomial;
pub mod transfer;

pub use approximant::{
    ac_density, ac_density_grid, ac_density_with_sign, approximant_coefficients, m_function, weyl_solution,
    wronskian_defect, ApproximantSpec, DensityPoint, DensityValue, WeylSolution,
};
pub use coefficients::{eval_coefficients, CoefficientSpec, JacobiCoefficients, PeriodicJacobi};
pub use constructions::{
    build_schedule, bv_energy, staircase_value, theorem15_sequence, theorem16_sequence, Level, Schedule, ScheduleMode,
    StaircaseValue,
};
pub use diagnostics::{
    corollary13_interval, gap_growth_lower_bound, growth_segments, growth_statistic, growth_statistic_at,
    largest_eigenvalue_gap, resolvent_density, sturm_count, truncated_m_function, verify_prop62, Corollary13Report,
    GrowthTrace, Prop62Report,
};
pub use error::{Error, Result};
pub use interval::{Interval, IntervalUnion};
pub use matrix::{Matrix2, ScaledMatrix};
pub use periodic::{
    band_structure, chebyshev_second_kind, comb_potential, discriminant_polynomial, discriminant_value,
    free_critical_points, gap_report, intersection_over_family, one_step_matrix, BandStructure, FamilyMode,
    FamilySampling, Gap, GapReport,
};
pub use polynomial::PolynomialReal;
pub use transfer::{
    block_coefficients, coupling_series, eigen_branch, pick_sign, q_step_block, transfer_product, CouplingSeries,
    Diagonalization, QStepBlock, Sign,
};
