//! Shared helpers for the integration suites: an independent quadrature
//! oracle, random small instances, and table-comparison plumbing.
#![allow(dead_code)] // each suite uses its own subset

use num_complex::Complex64;
use qpapprox_core::{
    analyze, Analysis, AnalysisOptions, GridRule, PeriodGrid, QuasiperiodicSpec, WindowKernel,
};
use rand::Rng;
use std::f64::consts::TAU;

/// Adaptive Simpson quadrature for complex integrands on [a, b].
pub fn adaptive_simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Complex64 {
    fn simpson<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        fa: Complex64,
        b: f64,
        fb: Complex64,
    ) -> (Complex64, Complex64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        let s = (fa + fm * 4.0 + fb) * ((b - a) / 6.0);
        (s, fm, m)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        fa: Complex64,
        b: f64,
        fb: Complex64,
        whole: Complex64,
        fm: Complex64,
        m: f64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let (left, flm, lm) = simpson(f, a, fa, m, fm);
        let (right, frm, rm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, flm, lm, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, right, frm, rm, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, fm, m) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, fm, m, tol, 24)
}

/// Continuous normalized windowed transform of a pure exponential by direct
/// quadrature; the independent oracle for `nwft_exponential`.
pub fn nwft_by_quadrature(kernel: &WindowKernel, delta: f64) -> Complex64 {
    let eta = kernel.order() as i32;
    let nc = kernel.norm_const();
    adaptive_simpson(
        &|t: f64| {
            let w = nc * (1.0 - (TAU * t).cos()).powi(eta);
            Complex64::cis(TAU * delta * t) * w
        },
        0.0,
        1.0,
        1e-12,
    )
}

/// One random small instance for the transform-equivalence checks.
pub struct SmallInstance {
    pub kernel: WindowKernel,
    pub grid: PeriodGrid,
    pub vt: Vec<f64>,
    pub hs: Vec<i64>,
}

pub fn random_instance<R: Rng>(rng: &mut R) -> SmallInstance {
    let d = rng.gen_range(1..=3usize);
    let eta = rng.gen_range(1..=3u32);
    // even node counts with a bounded full-grid product
    let budget_per_dim = (10_000f64).powf(1.0 / d as f64) as i64;
    let mut nodes = Vec::with_capacity(d);
    for _ in 0..d {
        let max_g = budget_per_dim.max(2 * eta as i64 + 4);
        let g = rng.gen_range((eta as i64 + 1)..=(max_g / 2)) * 2;
        nodes.push(g);
    }
    let lengths = vec![1i64; d];
    let grid = PeriodGrid::new(lengths, nodes.clone(), eta).unwrap();
    let vt: Vec<f64> = nodes
        .iter()
        .map(|&g| rng.gen_range(-(g as f64) / 2.0..(g as f64) / 2.0))
        .collect();
    let hs: Vec<i64> = nodes
        .iter()
        .map(|&g| rng.gen_range(-g / 2..=g / 2 - 1))
        .collect();
    let kernel = WindowKernel::new(eta).unwrap();
    SmallInstance {
        kernel,
        grid,
        vt,
        hs,
    }
}

/// Runs the full pipeline for one benchmark row.
pub fn run_row(spec: &QuasiperiodicSpec, lengths: &[i64], rule: GridRule, eta: u32) -> Analysis {
    let grid = PeriodGrid::from_rule(lengths.to_vec(), rule, eta).unwrap();
    analyze(spec, &grid, &AnalysisOptions::default()).unwrap()
}

/// Relative deviation of `computed` from `reference`.
pub fn rel(computed: f64, reference: f64) -> f64 {
    (computed - reference) / reference
}

/// One table-cell comparison outcome.
pub struct CellCheck {
    pub label: String,
    pub computed: f64,
    pub reference: f64,
    pub tolerance: f64,
}

impl CellCheck {
    pub fn passes(&self) -> bool {
        rel(self.computed, self.reference).abs() <= self.tolerance
    }

    pub fn line(&self) -> String {
        format!(
            "{}: computed {:.6e}  reference {:.4e}  rel {:+.2e}  tol {:.0e}  {}",
            self.label,
            self.computed,
            self.reference,
            rel(self.computed, self.reference),
            self.tolerance,
            if self.passes() { "PASS" } else { "FAIL" }
        )
    }
}

/// Prints every cell line, then panics if any cell failed.
pub fn assert_cells(header: &str, cells: &[CellCheck]) {
    println!("== {header} ==");
    for c in cells {
        println!("  {}", c.line());
    }
    let failing: Vec<&CellCheck> = cells.iter().filter(|c| !c.passes()).collect();
    assert!(
        failing.is_empty(),
        "{header}: {} of {} cells out of tolerance: {}",
        failing.len(),
        cells.len(),
        failing
            .iter()
            .map(|c| c.label.clone())
            .collect::<Vec<_>>()
            .join(", ")
    );
}
