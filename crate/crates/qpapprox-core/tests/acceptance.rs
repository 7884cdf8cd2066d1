//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! per checked quantity at its stated tolerance.
//!
//! Two checks encode reference-table cells that are inconsistent with their
//! own row state and cannot be reproduced by any assembly of that state (see
//! `fixtures::known_inconsistent_cells` and the notes in criterion 2 / 3
//! below). They are asserted at face value regardless, so their failures stay
//! visible instead of being papered over.

mod common;

use common::{assert_cells, nwft_by_quadrature, random_instance, run_row, CellCheck};
use qpapprox_core::{
    analyze, best_sequence, classify, dft_entry, dft_entry_full_grid, discrete_window_sum,
    fixtures, nwft_exponential, solve_quasiperiodic_coefficients, solve_residual, AnalysisOptions,
    GridRule, PeriodGrid, WindowKernel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[test]
fn criterion_1_one_dimensional_table() {
    let start = Instant::now();
    let spec = fixtures::benchmark_1d();
    let tol = fixtures::tolerances_1d();
    let mut cells = Vec::new();
    for row in fixtures::reference_table_1d() {
        let analysis = run_row(&spec, row.lengths, fixtures::GRID_RULE_1D, fixtures::ETA_1D);
        let r = &analysis.report;
        let l = row.lengths[0];
        cells.push(CellCheck {
            label: format!("L={l} delta_v"),
            computed: r.delta_v_e,
            reference: row.delta_v_e,
            tolerance: tol.delta_v_e,
        });
        cells.push(CellCheck {
            label: format!("L={l} eps0"),
            computed: r.eps0.unwrap(),
            reference: row.eps0,
            tolerance: tol.eps0,
        });
        cells.push(CellCheck {
            label: format!("L={l} eps1"),
            computed: r.eps1,
            reference: row.eps1,
            tolerance: tol.eps1,
        });
        cells.push(CellCheck {
            label: format!("L={l} eps2"),
            computed: r.eps2,
            reference: row.eps2,
            tolerance: tol.eps2,
        });
    }
    let elapsed = start.elapsed();
    println!("criterion 1 runtime: {:.1} s", elapsed.as_secs_f64());
    assert_cells("criterion 1: one-dimensional reference table", &cells);
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "criterion 1 exceeded its runtime budget"
    );
}

#[test]
fn criterion_2_exponent_rounding_and_coefficients() {
    let spec = fixtures::benchmark_1d();
    let analysis = run_row(&spec, &[13860], fixtures::GRID_RULE_1D, fixtures::ETA_1D);
    let h: Vec<i64> = analysis
        .approximant
        .exponents()
        .iter()
        .map(|r| r[0])
        .collect();
    println!("criterion 2: rounded exponents {h:?}");
    assert_eq!(h, vec![13860, 19601, 53062, 47321]);

    // Reference imaginary perturbations of the periodic coefficients. The
    // solved values have the same significands but sit exactly 10x / 20x
    // higher: the leading coefficient deviation of the windowed fit is
    // i*pi*(h - v) per mode, giving -8.0139e-6 on the sqrt(2) mode and
    // -3.2056e-6 (= 0.02 * pi * 2(h - v)) on the 1 + 2 sqrt(2) mode. No
    // solve of this system produces the referenced pair (their ratio 5 equals
    // the coefficient ratio, not any mode-residual ratio), so this check
    // documents the divergence and fails.
    let y_p = analysis.approximant.coefficients();
    let dev2 = y_p[1].im;
    let dev3 = y_p[2].im;
    println!(
        "criterion 2: imaginary perturbations computed ({dev2:.5e}, {dev3:.5e}) vs reference (-8.0139e-7, -1.6028e-7)"
    );
    let cells = vec![
        CellCheck {
            label: "im(y_p[1])".into(),
            computed: dev2,
            reference: -8.0139e-7,
            tolerance: 5e-2,
        },
        CellCheck {
            label: "im(y_p[2])".into(),
            computed: dev3,
            reference: -1.6028e-7,
            tolerance: 5e-2,
        },
    ];
    assert_cells("criterion 2: periodic coefficient perturbations", &cells);
}

#[test]
fn criterion_3_three_dimensional_table() {
    let start = Instant::now();
    let tol = fixtures::tolerances_3d();
    let mut cells = Vec::new();
    for (name, spec, table) in [
        (
            "set1",
            fixtures::benchmark_3d_case1(),
            fixtures::reference_table_3d_case1(),
        ),
        (
            "set2",
            fixtures::benchmark_3d_case2(),
            fixtures::reference_table_3d_case2(),
        ),
    ] {
        for row in table {
            let analysis = run_row(&spec, row.lengths, fixtures::GRID_RULE_3D, fixtures::ETA_3D);
            let r = &analysis.report;
            let l = row.lengths;
            cells.push(CellCheck {
                label: format!("{name} L={l:?} delta_v"),
                computed: r.delta_v_e,
                reference: row.delta_v_e,
                tolerance: tol.delta_v_e,
            });
            cells.push(CellCheck {
                label: format!("{name} L={l:?} eps0"),
                computed: r.eps0.unwrap(),
                reference: row.eps0,
                tolerance: tol.eps0,
            });
            cells.push(CellCheck {
                label: format!("{name} L={l:?} eps1"),
                computed: r.eps1,
                reference: row.eps1,
                tolerance: tol.eps1,
            });
            cells.push(CellCheck {
                label: format!("{name} L={l:?} eps2"),
                computed: r.eps2,
                reference: row.eps2,
                tolerance: tol.eps2,
            });
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 3 runtime: {:.1} s", elapsed.as_secs_f64());
    println!(
        "note: the eps0/eps1 cells of L=[127, 99, 209] are inconsistent with that row's own \
         delta_v/eps2 (both reproduced below 0.4%); see fixtures::known_inconsistent_cells"
    );
    assert!(
        elapsed.as_secs_f64() < 600.0,
        "criterion 3 exceeded its runtime budget"
    );
    assert_cells("criterion 3: three-dimensional reference tables", &cells);
}

#[test]
fn criterion_4_record_sequence() {
    let spec = fixtures::benchmark_1d();
    let exponents = spec.exponents().unwrap();
    // irrational entries of the only column
    let column: Vec<f64> = exponents
        .iter()
        .map(|l| l[0])
        .filter(|x| (x - x.round()).abs() > 1e-9)
        .collect();
    let seq = best_sequence(&column, 21, 14000).unwrap();
    let periods: Vec<i64> = seq.records.iter().map(|r| r.0).collect();
    println!("criterion 4: records {periods:?}");
    assert_eq!(periods, vec![29, 70, 169, 408, 985, 2378, 5741, 13860]);
}

#[test]
fn criterion_5_decay_rate() {
    let spec = fixtures::benchmark_1d();
    let exponents = spec.exponents().unwrap();
    let column: Vec<f64> = exponents
        .iter()
        .map(|l| l[0])
        .filter(|x| (x - x.round()).abs() > 1e-9)
        .collect();
    let seq = best_sequence(&column, 21, 14000).unwrap();
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    let n = seq.records.len() as f64;
    for &(t, e) in &seq.records {
        let x = (t as f64).ln();
        let y = e.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    println!("criterion 5: log-log slope of the record errors = {slope:.6}");
    assert!((slope + 1.0).abs() <= 0.1);
}

#[test]
fn criterion_6_transform_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let mut worst_dft = 0.0f64;
    let mut worst_nwft = 0.0f64;
    for trial in 0..200 {
        let inst = random_instance(&mut rng);
        let fast = dft_entry(&inst.kernel, &inst.vt, &inst.hs, &inst.grid).unwrap();
        let brute = dft_entry_full_grid(&inst.kernel, &inst.vt, &inst.hs, &inst.grid).unwrap();
        let d = (fast - brute).norm();
        worst_dft = worst_dft.max(d);
        assert!(d < 1e-12, "trial {trial}: dft mismatch {d:.2e}");

        let j = rng.gen_range(0..inst.grid.dim());
        let delta = inst.vt[j] - inst.hs[j] as f64;
        let closed = nwft_exponential(&inst.kernel, &[delta], &[0.0]);
        let quad = nwft_by_quadrature(&inst.kernel, delta);
        let q = (closed - quad).norm();
        worst_nwft = worst_nwft.max(q);
        assert!(q < 1e-8, "trial {trial}: quadrature mismatch {q:.2e}");
    }
    println!(
        "criterion 6: 200 instances, worst separable-vs-full {worst_dft:.2e}, worst closed-form-vs-quadrature {worst_nwft:.2e}"
    );
}

#[test]
fn criterion_7_window_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x717d0);
    let mut worst = 0.0f64;
    for trial in 0..50 {
        let eta = rng.gen_range(1..=4u32);
        let d = rng.gen_range(1..=3usize);
        let nodes: Vec<i64> = (0..d)
            .map(|_| 2 * rng.gen_range(eta as i64 + 1..=300))
            .collect();
        let kernel = WindowKernel::new(eta).unwrap();
        let sum = discrete_window_sum(&kernel, &nodes).unwrap();
        let err = (sum - 1.0).abs();
        worst = worst.max(err);
        assert!(
            err < 1e-12,
            "trial {trial}: G {nodes:?} eta {eta} sum {sum}"
        );
    }
    for eta in 1..=6u32 {
        let kernel = WindowKernel::new(eta).unwrap();
        assert_eq!(
            kernel.fourier_coeff(0),
            1.0,
            "c_0 must be exactly 1 for eta {eta}"
        );
    }
    println!("criterion 7: 50 window sums, worst |sum - 1| = {worst:.2e}; c_0 exact for eta <= 6");
}

#[test]
fn criterion_8_structural_invariants() {
    let mut checked = 0;
    let mut run = |spec: &qpapprox_core::QuasiperiodicSpec, lengths: &[i64], rule: GridRule| {
        let analysis = run_row(spec, lengths, rule, 1);
        let r = &analysis.report;
        assert!(r.admissible_weak, "{lengths:?} should be weak-admissible");
        let sys = &analysis.system;
        let n = sys.size();
        // periodic matrix is the identity
        for s in 0..n {
            for t in 0..n {
                let expect = if s == t { 1.0 } else { 0.0 };
                let dev = (sys.periodic_matrix()[(s, t)] - expect).norm();
                assert!(dev <= 1e-10, "{lengths:?}: M_p[{s},{t}] off by {dev:.2e}");
            }
        }
        // rational block: the first zeta columns of M are identity columns
        let set = &analysis.set;
        for t in 0..set.zeta() {
            for s in 0..n {
                let expect = if s == t { 1.0 } else { 0.0 };
                let dev = (sys.matrix()[(s, t)] - expect).norm();
                assert!(dev <= 1e-10, "{lengths:?}: M[{s},{t}] off by {dev:.2e}");
            }
        }
        // solve residual
        let y = set.permute(spec.coefficients());
        let y1: f64 = y.iter().map(|z| z.norm()).sum();
        let res = solve_residual(sys, &y, &analysis.periodic_coefficients);
        assert!(res <= 1e-10 * y1, "{lengths:?}: residual {res:.2e}");
        // difference bound and ordered errors
        let bound = std::f64::consts::TAU * n as f64 * r.delta_v_e;
        assert!(sys.difference_norm() < bound);
        let e0 = r.eps0.unwrap();
        assert!(
            e0 < r.eps1 && r.eps1 < r.eps2,
            "{lengths:?}: ordering violated: {e0} {} {}",
            r.eps1,
            r.eps2
        );
        checked += 1;
    };
    let one = fixtures::benchmark_1d();
    for row in fixtures::reference_table_1d() {
        run(&one, row.lengths, fixtures::GRID_RULE_1D);
    }
    let c1 = fixtures::benchmark_3d_case1();
    for row in fixtures::reference_table_3d_case1() {
        run(&c1, row.lengths, fixtures::GRID_RULE_3D);
    }
    let c2 = fixtures::benchmark_3d_case2();
    for row in fixtures::reference_table_3d_case2() {
        run(&c2, row.lengths, fixtures::GRID_RULE_3D);
    }
    println!("criterion 8: structural invariants hold on {checked} admissible rows");
}

#[test]
fn criterion_9_trivial_limits_and_round_trips() {
    // rational-only fixture: zero residuals, zero analytic bound, flat sup
    let spec = fixtures::rational_fixture();
    let grid = PeriodGrid::new(vec![4], vec![64], 1).unwrap();
    let analysis = analyze(&spec, &grid, &AnalysisOptions::default()).unwrap();
    let r = &analysis.report;
    println!(
        "criterion 9: rational-only delta_v = {:.1e}, eps0 = {:.1e}, eps2 = {:.1e}",
        r.delta_v_e,
        r.eps0.unwrap(),
        r.eps2
    );
    assert_eq!(r.delta_v_e, 0.0);
    assert!(r.eps0.unwrap() <= 1e-12);
    assert_eq!(r.eps2, 0.0);

    // round trip y -> y_p -> y on every fixture row
    let mut worst = 0.0f64;
    let mut round_trip =
        |spec: &qpapprox_core::QuasiperiodicSpec, lengths: &[i64], rule: GridRule| {
            let grid = PeriodGrid::from_rule(lengths.to_vec(), rule, 1).unwrap();
            let set = classify(spec, grid.lengths()).unwrap();
            let sys = qpapprox_core::build_system(spec, &grid, &set).unwrap();
            let y = set.permute(spec.coefficients());
            let y_p = qpapprox_core::solve_periodic_coefficients(&sys, &y).unwrap();
            let back = solve_quasiperiodic_coefficients(&sys, &y_p).unwrap();
            for (a, b) in y.iter().zip(&back) {
                let dev = (a - b).norm() / a.norm().max(1e-300);
                worst = worst.max(dev);
                assert!(dev <= 1e-8, "{lengths:?}: round-trip deviation {dev:.2e}");
            }
        };
    let one = fixtures::benchmark_1d();
    for row in fixtures::reference_table_1d() {
        round_trip(&one, row.lengths, fixtures::GRID_RULE_1D);
    }
    let c1 = fixtures::benchmark_3d_case1();
    for row in fixtures::reference_table_3d_case1() {
        round_trip(&c1, row.lengths, fixtures::GRID_RULE_3D);
    }
    let c2 = fixtures::benchmark_3d_case2();
    for row in fixtures::reference_table_3d_case2() {
        round_trip(&c2, row.lengths, fixtures::GRID_RULE_3D);
    }
    println!("criterion 9: worst round-trip relative deviation {worst:.2e}");
}
