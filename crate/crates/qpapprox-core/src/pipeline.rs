//! End-to-end driver: classify, assemble, solve, measure, bound.

use crate::approx::{
    assemble_approximant, build_system, solve_periodic_coefficients, sup_error, CoefficientSystem,
    SupSamplingPolicy,
};
use crate::bounds::{
    check_admissibility, epsilon1, epsilon2_from_constants, x_constants, BoundInputs,
};
use crate::classify::{classify, ScaledExponentSet};
use crate::diophantine::delta_v_norm;
use crate::error::Result;
use crate::types::{ErrorReport, PeriodGrid, PeriodicApproximant, QuasiperiodicSpec};
use num_complex::Complex64;

/// Pipeline switches.
#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    /// Use the sharpened `x1` (measured residuals) in the analytic bound.
    pub sharpened_x1: bool,
    /// Run the sup-error search; skipping it leaves `eps0` unset.
    pub measure_sup: bool,
    pub sup_policy: SupSamplingPolicy,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            sharpened_x1: true,
            measure_sup: true,
            sup_policy: SupSamplingPolicy::default(),
        }
    }
}

/// Everything one run produces.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub set: ScaledExponentSet,
    pub system: CoefficientSystem,
    /// Periodic coefficients in classifier storage order.
    pub periodic_coefficients: Vec<Complex64>,
    /// The approximant, back in input order.
    pub approximant: PeriodicApproximant,
    pub report: ErrorReport,
}

/// Runs the full pipeline for one `(spec, grid)` pair.
pub fn analyze(
    spec: &QuasiperiodicSpec,
    grid: &PeriodGrid,
    options: &AnalysisOptions,
) -> Result<Analysis> {
    let set = classify(spec, grid.lengths())?;
    let system = build_system(spec, grid, &set)?;
    let y = set.permute(spec.coefficients());
    let y_p = solve_periodic_coefficients(&system, &y)?;
    let b_max = y_p.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let approximant = assemble_approximant(grid, &set, &y_p)?;

    let mut notes: Vec<String> = set.notes().to_vec();
    notes.push("b_max taken from the solved periodic coefficients".into());

    let eps0 = if options.measure_sup {
        notes.push("eps0 measured over the mirrored period (see sup_error)".into());
        Some(sup_error(spec, &approximant, &options.sup_policy)?)
    } else {
        None
    };

    let inputs = BoundInputs::collect(spec, grid, &set, b_max)?;
    let admissibility = check_admissibility(&inputs);
    notes.extend(admissibility.details.iter().cloned());
    let eps1 = epsilon1(&system, &set, b_max)?;
    let (xc, eps2) = if set.count() == set.zeta() {
        (None, 0.0)
    } else {
        let xc = x_constants(&inputs, options.sharpened_x1)?;
        let e2 = epsilon2_from_constants(&inputs, &xc)?;
        (Some(xc), e2)
    };

    let report = ErrorReport {
        delta_v_e: delta_v_norm(&set),
        eps0,
        eps1,
        eps2,
        x1: xc.map_or(1.0, |x| x.x1),
        x2: xc.map_or(0.0, |x| x.x2),
        x3: xc.map_or(0.0, |x| x.x3),
        y2: xc.map_or(0.0, |x| x.y2),
        b_max,
        admissible_full: admissibility.full,
        admissible_weak: admissibility.weak,
        notes,
    };
    Ok(Analysis {
        set,
        system,
        periodic_coefficients: y_p,
        approximant,
        report,
    })
}
