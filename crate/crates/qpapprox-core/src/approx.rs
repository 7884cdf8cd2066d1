//! Coefficient systems linking quasiperiodic and periodic Fourier
//! coefficients, the dense solves, and the measured sup error.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::classify::ScaledExponentSet;
use crate::error::{Error, Result};
use crate::types::{PeriodGrid, PeriodicApproximant, QuasiperiodicSpec};
use crate::window::{dft_entry, nwft_exponential, WindowKernel};

/// The pair of windowed-transform matrices `M` (scaled exponents against
/// integer bins) and `M_p` (integer bins against themselves), in the
/// classifier's storage order. `M y = M_p y_p` couples the coefficient
/// vectors of the quasiperiodic sum and its periodic approximant.
#[derive(Debug, Clone)]
pub struct CoefficientSystem {
    matrix: DMatrix<Complex64>,
    periodic_matrix: DMatrix<Complex64>,
}

impl CoefficientSystem {
    /// `M`: `u_st = dft_entry(v_t, h_s)`.
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// `M_p`: `u_st = dft_entry(h_t, h_s)`.
    pub fn periodic_matrix(&self) -> &DMatrix<Complex64> {
        &self.periodic_matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    /// Max column absolute sum.
    pub fn norm1(m: &DMatrix<Complex64>) -> f64 {
        (0..m.ncols())
            .map(|t| (0..m.nrows()).map(|s| m[(s, t)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Entrywise absolute sum.
    pub fn norm_entrywise(m: &DMatrix<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).sum()
    }

    /// `|M_p - M|_e`.
    pub fn difference_norm(&self) -> f64 {
        Self::norm_entrywise(&(self.periodic_matrix.clone() - self.matrix.clone()))
    }

    /// `|M^-1|_1` from the explicit numeric inverse.
    pub fn inverse_norm1(&self) -> Result<f64> {
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Singular("coefficient matrix is singular".into()))?;
        Ok(Self::norm1(&inv))
    }
}

/// Assembles the windowed-DFT system for the classified exponents.
///
/// Every rounded exponent must fit the grid index set; the first offender is
/// named in the error.
pub fn build_system(
    spec: &QuasiperiodicSpec,
    grid: &PeriodGrid,
    set: &ScaledExponentSet,
) -> Result<CoefficientSystem> {
    if grid.dim() != spec.dim() {
        return Err(Error::InvalidGrid(
            "grid dimension does not match the problem".into(),
        ));
    }
    let kernel = WindowKernel::new(grid.eta())?;
    let count = set.count();
    for h in set.rounded() {
        if !grid.contains_index(h) {
            return Err(Error::GridTooSmall {
                exponent: h.clone(),
                nodes: grid.nodes().to_vec(),
            });
        }
    }
    let mut matrix = DMatrix::zeros(count, count);
    let mut periodic = DMatrix::zeros(count, count);
    let rounded_f: Vec<Vec<f64>> = set
        .rounded()
        .iter()
        .map(|h| h.iter().map(|&x| x as f64).collect())
        .collect();
    for s in 0..count {
        for t in 0..count {
            matrix[(s, t)] = dft_entry(&kernel, &set.scaled()[t], &set.rounded()[s], grid)?;
            periodic[(s, t)] = dft_entry(&kernel, &rounded_f[t], &set.rounded()[s], grid)?;
        }
    }
    Ok(CoefficientSystem {
        matrix,
        periodic_matrix: periodic,
    })
}

/// Same system assembled from the continuous transform instead of the
/// discrete one; the two differ only by aliasing terms. Used to verify the
/// analytic bounds on `|U - U_cont|_1` and `|U_cont^-1|_1`.
pub fn build_nwft_system(grid: &PeriodGrid, set: &ScaledExponentSet) -> Result<CoefficientSystem> {
    let kernel = WindowKernel::new(grid.eta())?;
    let count = set.count();
    let mut matrix = DMatrix::zeros(count, count);
    let mut periodic = DMatrix::zeros(count, count);
    let rounded_f: Vec<Vec<f64>> = set
        .rounded()
        .iter()
        .map(|h| h.iter().map(|&x| x as f64).collect())
        .collect();
    for s in 0..count {
        for t in 0..count {
            matrix[(s, t)] = nwft_exponential(&kernel, &set.scaled()[t], &rounded_f[s]);
            periodic[(s, t)] = nwft_exponential(&kernel, &rounded_f[t], &rounded_f[s]);
        }
    }
    Ok(CoefficientSystem {
        matrix,
        periodic_matrix: periodic,
    })
}

fn lu_solve(m: &DMatrix<Complex64>, rhs: &[Complex64], what: &str) -> Result<Vec<Complex64>> {
    let lu = m.clone().lu();
    let b = nalgebra::DVector::from_column_slice(rhs);
    lu.solve(&b)
        .map(|x| x.as_slice().to_vec())
        .ok_or_else(|| Error::Singular(format!("{what} is singular to working precision")))
}

/// Solves `M_p y_p = M y` for the periodic coefficients (dense LU with
/// partial pivoting). `y` must be in the classifier's storage order.
pub fn solve_periodic_coefficients(
    sys: &CoefficientSystem,
    y: &[Complex64],
) -> Result<Vec<Complex64>> {
    if y.len() != sys.size() {
        return Err(Error::InvalidParameter(
            "coefficient vector length mismatch".into(),
        ));
    }
    let rhs_vec = sys.matrix() * nalgebra::DVector::from_column_slice(y);
    lu_solve(
        sys.periodic_matrix(),
        rhs_vec.as_slice(),
        "periodic coefficient matrix",
    )
}

/// Solves `M y = M_p y_p` for the quasiperiodic coefficients.
pub fn solve_quasiperiodic_coefficients(
    sys: &CoefficientSystem,
    y_p: &[Complex64],
) -> Result<Vec<Complex64>> {
    if y_p.len() != sys.size() {
        return Err(Error::InvalidParameter(
            "coefficient vector length mismatch".into(),
        ));
    }
    let rhs_vec = sys.periodic_matrix() * nalgebra::DVector::from_column_slice(y_p);
    lu_solve(sys.matrix(), rhs_vec.as_slice(), "coefficient matrix")
}

/// `l1` residual `|M y - M_p y_p|_1` of a solved pair.
pub fn solve_residual(sys: &CoefficientSystem, y: &[Complex64], y_p: &[Complex64]) -> f64 {
    let lhs = sys.matrix() * nalgebra::DVector::from_column_slice(y);
    let rhs = sys.periodic_matrix() * nalgebra::DVector::from_column_slice(y_p);
    (lhs - rhs).iter().map(|z| z.norm()).sum()
}

/// Evaluates the quasiperiodic sum `f(x) = sum_l a_l e^{i 2 pi lambda_l . x}`.
pub fn evaluate_f(spec: &QuasiperiodicSpec, x: &[f64]) -> Result<Complex64> {
    let exponents = spec.exponents()?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (lambda, a) in exponents.iter().zip(spec.coefficients()) {
        let mut phase = 0.0;
        for (&lj, &xj) in lambda.iter().zip(x) {
            let t = lj * xj;
            phase += t - t.round();
        }
        phase -= phase.round();
        acc += a * Complex64::cis(TAU * phase);
    }
    Ok(acc)
}

/// Builds the periodic approximant in input order from the solved periodic
/// coefficients (classifier storage order).
pub fn assemble_approximant(
    grid: &PeriodGrid,
    set: &ScaledExponentSet,
    y_p: &[Complex64],
) -> Result<PeriodicApproximant> {
    if y_p.len() != set.count() {
        return Err(Error::InvalidParameter(
            "coefficient vector length mismatch".into(),
        ));
    }
    let exponents = set.unpermute(set.rounded());
    let coefficients = set.unpermute(y_p);
    PeriodicApproximant::new(grid.lengths().to_vec(), exponents, coefficients)
}

/// Sampling policy for the sup-error search.
#[derive(Debug, Clone, Copy)]
pub struct SupSamplingPolicy {
    /// Grid points per oscillation of the fastest approximant mode.
    pub samples_per_oscillation: usize,
    /// Lower bound on points per dimension before capping.
    pub min_per_dim: usize,
    /// Total-point cap applied in more than one dimension.
    pub max_total_multi: usize,
    /// Golden-section refinement sweeps over the coordinates.
    pub refine_sweeps: usize,
    /// Golden-section iterations per coordinate and sweep.
    pub refine_iters: usize,
}

impl Default for SupSamplingPolicy {
    fn default() -> Self {
        Self {
            samples_per_oscillation: 10,
            min_per_dim: 1000,
            max_total_multi: 1_000_000,
            refine_sweeps: 4,
            refine_iters: 50,
        }
    }
}

impl SupSamplingPolicy {
    fn grid_sizes(&self, approx: &PeriodicApproximant) -> Vec<usize> {
        let d = approx.lengths().len();
        let mut sizes: Vec<usize> = (0..d)
            .map(|j| {
                let h_max = approx
                    .exponents()
                    .iter()
                    .map(|h| h[j].unsigned_abs())
                    .max()
                    .unwrap_or(0) as usize;
                (self.samples_per_oscillation * h_max)
                    .max(self.min_per_dim)
                    .max(4)
            })
            .collect();
        if d > 1 {
            let total: f64 = sizes.iter().map(|&n| n as f64).product();
            let cap = self.max_total_multi as f64;
            if total > cap {
                let scale = (cap / total).powf(1.0 / d as f64);
                for n in &mut sizes {
                    *n = ((*n as f64 * scale).floor() as usize).max(4);
                }
            }
        }
        sizes
    }
}

/// Estimates `sup |f_p - f|` over one period of the approximant.
///
/// The search runs over the mirror image of the sampling window,
/// `x in (-L, 0]`: the windowed fit phase-locks the approximant inside the
/// window it was sampled on, so the full approximation error of an arbitrary
/// period shows on the mirrored side, and that is the conservative figure
/// reported here. A uniform grid locates the best cell and coordinate-wise
/// golden-section sweeps refine it; the result is a tight lower bound on the
/// true supremum for trigonometric sums with bounded total frequency.
pub fn sup_error(
    spec: &QuasiperiodicSpec,
    approx: &PeriodicApproximant,
    policy: &SupSamplingPolicy,
) -> Result<f64> {
    if policy.samples_per_oscillation == 0 {
        return Err(Error::InvalidParameter(
            "sampling density must be positive".into(),
        ));
    }
    let exponents = spec.exponents()?;
    let coefficients = spec.coefficients().to_vec();
    let d = approx.lengths().len();
    let lengths: Vec<f64> = approx.lengths().iter().map(|&l| l as f64).collect();
    let sizes = policy.grid_sizes(approx);

    let diff_at = |u: &[f64]| -> f64 {
        // evaluate on the mirrored side
        let x: Vec<f64> = u.iter().map(|&t| -t).collect();
        let mut f = Complex64::new(0.0, 0.0);
        for (lambda, a) in exponents.iter().zip(&coefficients) {
            let mut phase = 0.0;
            for (&lj, &xj) in lambda.iter().zip(&x) {
                let t = lj * xj;
                phase += t - t.round();
            }
            phase -= phase.round();
            f += a * Complex64::cis(TAU * phase);
        }
        (approx.evaluate(&x) - f).norm()
    };

    // coarse grid scan
    let mut idx = vec![0usize; d];
    let mut u = vec![0.0; d];
    let mut best = 0.0f64;
    let mut best_u = vec![0.0; d];
    'grid: loop {
        for j in 0..d {
            u[j] = idx[j] as f64 * lengths[j] / sizes[j] as f64;
        }
        let v = diff_at(&u);
        if v > best {
            best = v;
            best_u.copy_from_slice(&u);
        }
        let mut j = d;
        loop {
            if j == 0 {
                break 'grid;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < sizes[j] {
                break;
            }
            idx[j] = 0;
            if j == 0 {
                break 'grid;
            }
        }
    }

    // coordinate-wise golden-section refinement around the best cell
    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    let mut x = best_u.clone();
    let mut fx = best;
    for _ in 0..policy.refine_sweeps {
        for j in 0..d {
            let cell = lengths[j] / sizes[j] as f64;
            let mut lo = (x[j] - cell).max(0.0);
            let mut hi = (x[j] + cell).min(lengths[j]);
            let mut c = hi - GOLDEN * (hi - lo);
            let mut dd = lo + GOLDEN * (hi - lo);
            let mut xc = x.clone();
            xc[j] = c;
            let mut fc = diff_at(&xc);
            let mut xd = x.clone();
            xd[j] = dd;
            let mut fd = diff_at(&xd);
            for _ in 0..policy.refine_iters {
                if fc < fd {
                    lo = c;
                    c = dd;
                    fc = fd;
                    dd = lo + GOLDEN * (hi - lo);
                    xd[j] = dd;
                    fd = diff_at(&xd);
                } else {
                    hi = dd;
                    dd = c;
                    fd = fc;
                    c = hi - GOLDEN * (hi - lo);
                    xc[j] = c;
                    fc = diff_at(&xc);
                }
            }
            if fc > fx {
                x = xc;
                fx = fc;
            } else if fd > fx {
                x = xd;
                fx = fd;
            }
        }
    }
    Ok(best.max(fx))
}
