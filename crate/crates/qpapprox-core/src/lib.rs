//! Periodic approximation of quasiperiodic trigonometric polynomials.
//!
//! A quasiperiodic sum `f(x) = sum_l a_l exp(i 2 pi lambda_l . x)` with
//! Diophantine frequencies is approximated on the box
//! `[0, L_1) x ... x [0, L_d)` by a periodic sum whose integer exponents are
//! the nearest-integer roundings of the scaled frequencies `L o lambda_l`.
//! The crate computes the approximant's coefficients through windowed-DFT
//! linear systems, measures the sup error, and evaluates two certified upper
//! bounds for it, together with the admissibility conditions under which the
//! bounds apply.
//!
//! Modules follow the pipeline: [`types`] holds the domain objects,
//! [`window`] the windowed transforms, [`classify`](mod@classify) the rationality
//! classification of scaled exponents, [`diophantine`] the residual metrics
//! and record sequences, [`approx`] the coefficient systems and the sup
//! search, [`bounds`] the analytic bound chain, and [`pipeline`] the
//! end-to-end driver. [`fixtures`] bundles the benchmark problems and their
//! reference tables.
//!
//! ```
//! use qpapprox_core::{analyze, AnalysisOptions, DiophantineParams, GridRule,
//!                     PeriodGrid, QuasiperiodicSpec};
//!
//! let spec = QuasiperiodicSpec::new(
//!     vec![vec![1.0, std::f64::consts::SQRT_2]],
//!     vec![vec![1, 0], vec![0, 1]],
//!     vec![
//!         qpapprox_core::Complex64::new(0.5, 0.0),
//!         qpapprox_core::Complex64::new(0.25, 0.0),
//!     ],
//!     2,
//!     DiophantineParams { c_a: 2.0, tau: 0.2 },
//! )?;
//! let grid = PeriodGrid::from_rule(vec![29], GridRule::TenTimesL, 1)?;
//! let analysis = analyze(&spec, &grid, &AnalysisOptions::default())?;
//! let report = &analysis.report;
//! assert!(report.eps0.unwrap() < report.eps1);
//! assert!(report.eps1 < report.eps2);
//! # Ok::<(), qpapprox_core::Error>(())
//! ```

pub mod approx;
pub mod bounds;
pub mod classify;
pub mod diophantine;
pub mod error;
pub mod fixtures;
pub mod pipeline;
pub mod types;
pub mod window;

pub use approx::{
    assemble_approximant, build_nwft_system, build_system, evaluate_f, solve_periodic_coefficients,
    solve_quasiperiodic_coefficients, solve_residual, sup_error, CoefficientSystem,
    SupSamplingPolicy,
};
pub use bounds::{
    check_admissibility, epsilon1, epsilon2, truncation_bound, x_constants, Admissibility,
    BoundInputs, GFunctions, XConstants,
};
pub use classify::{classify, ScaledExponentSet};
pub use diophantine::{
    best_sequence, check_diophantine, column_error, delta_v_norm, dirichlet_bound,
    BestApproxSequence, DiophantineCheck, DiophantineReport,
};
pub use error::{Error, Result};
pub use pipeline::{analyze, Analysis, AnalysisOptions};
pub use types::{
    DiophantineParams, ErrorReport, GridRule, PeriodGrid, PeriodicApproximant, QuasiperiodicSpec,
    RationalMark, DIST_EPS, INT_EPS, TIE_EPS,
};
pub use window::{
    aliasing_check, dft_entry, dft_entry_full_grid, discrete_window_sum, nwft_exponential,
    window_weight, WindowKernel,
};

/// Complex scalar used throughout.
pub type Complex64 = num_complex::Complex64;
