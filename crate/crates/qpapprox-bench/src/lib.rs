//! Benchmark-only crate; shared setup for the criterion targets.

use qpapprox_core::{GridRule, PeriodGrid, QuasiperiodicSpec};

/// The bundled one-dimensional benchmark at a mid-size period.
pub fn mid_size_problem() -> (QuasiperiodicSpec, PeriodGrid) {
    let spec = qpapprox_core::fixtures::benchmark_1d();
    let grid = PeriodGrid::from_rule(vec![985], GridRule::TenTimesL, 1).unwrap();
    (spec, grid)
}

/// The bundled three-dimensional benchmark at its smallest period vector.
pub fn small_3d_problem() -> (QuasiperiodicSpec, PeriodGrid) {
    let spec = qpapprox_core::fixtures::benchmark_3d_case1();
    let grid = PeriodGrid::from_rule(vec![7, 17, 7], GridRule::TwiceMaxPlusTen, 1).unwrap();
    (spec, grid)
}
