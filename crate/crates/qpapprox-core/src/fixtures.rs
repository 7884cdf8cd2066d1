//! Bundled benchmark problems and their reference error tables, consumed by
//! the verification command and the acceptance suite.

use num_complex::Complex64;

use crate::types::{DiophantineParams, GridRule, QuasiperiodicSpec};

/// One row of a reference table.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceRow {
    pub lengths: &'static [i64],
    pub delta_v_e: f64,
    pub eps0: f64,
    pub eps1: f64,
    pub eps2: f64,
}

/// Per-column relative tolerances for a table comparison.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceTolerances {
    pub delta_v_e: f64,
    pub eps0: f64,
    pub eps1: f64,
    pub eps2: f64,
}

/// One-dimensional benchmark: four modes on the sqrt(2) frequency module.
///
/// The lattice is ordered so the rounded exponents print in the reference
/// order (13860, 19601, 53062, 47321); each coefficient keeps its mode.
pub fn benchmark_1d() -> QuasiperiodicSpec {
    QuasiperiodicSpec::new(
        vec![vec![1.0, std::f64::consts::SQRT_2]],
        vec![vec![1, 0], vec![0, 1], vec![1, 2], vec![2, 1]],
        vec![
            Complex64::new(0.02, -0.2),
            Complex64::new(0.1, 0.0),
            Complex64::new(0.02, 0.0),
            Complex64::new(0.03, 0.1),
        ],
        2,
        DiophantineParams { c_a: 2.0, tau: 0.2 },
    )
    .expect("benchmark spec is valid")
}

pub const GRID_RULE_1D: GridRule = GridRule::TenTimesL;
pub const ETA_1D: u32 = 1;

pub fn reference_table_1d() -> &'static [ReferenceRow] {
    const T: &[ReferenceRow] = &[
        ReferenceRow {
            lengths: &[29],
            delta_v_e: 4.8773e-02,
            eps0: 2.7689e-02,
            eps1: 9.2404e-02,
            eps2: 3.2843e-01,
        },
        ReferenceRow {
            lengths: &[70],
            delta_v_e: 2.0203e-02,
            eps0: 1.1549e-02,
            eps1: 3.8271e-02,
            eps2: 1.2979e-01,
        },
        ReferenceRow {
            lengths: &[169],
            delta_v_e: 8.3682e-03,
            eps0: 4.7935e-03,
            eps1: 1.5852e-02,
            eps2: 5.3200e-02,
        },
        ReferenceRow {
            lengths: &[408],
            delta_v_e: 3.4662e-03,
            eps0: 1.9877e-03,
            eps1: 6.5662e-03,
            eps2: 2.1948e-02,
        },
        ReferenceRow {
            lengths: &[985],
            delta_v_e: 1.4357e-03,
            eps0: 8.2512e-04,
            eps1: 2.7198e-03,
            eps2: 9.0765e-03,
        },
        ReferenceRow {
            lengths: &[2378],
            delta_v_e: 5.9471e-04,
            eps0: 3.4217e-04,
            eps1: 1.1266e-03,
            eps2: 3.7571e-03,
        },
        ReferenceRow {
            lengths: &[5741],
            delta_v_e: 2.4634e-04,
            eps0: 1.4180e-04,
            eps1: 4.6665e-04,
            eps2: 1.5558e-03,
        },
        ReferenceRow {
            lengths: &[13860],
            delta_v_e: 1.0201e-04,
            eps0: 5.8747e-05,
            eps1: 1.9329e-04,
            eps2: 6.4436e-04,
        },
    ];
    T
}

pub fn tolerances_1d() -> ReferenceTolerances {
    // delta V to four significant digits; bounds within 1%; measured sup
    // within 2%
    ReferenceTolerances {
        delta_v_e: 5e-4,
        eps0: 2e-2,
        eps1: 1e-2,
        eps2: 1e-2,
    }
}

/// Three-dimensional benchmark, first frequency set (two modes).
pub fn benchmark_3d_case1() -> QuasiperiodicSpec {
    let s2 = std::f64::consts::SQRT_2;
    let s3 = 3.0f64.sqrt();
    QuasiperiodicSpec::new(
        vec![
            vec![1.0, 0.0, 0.0, s3 / 2.0],
            vec![0.0, s2 / 2.0, 0.0, 0.0],
            vec![0.0, 0.0, s3 / 2.0, 0.0],
        ],
        vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]],
        vec![Complex64::new(0.2, 0.1), Complex64::new(0.1, 0.2)],
        1,
        DiophantineParams { c_a: 2.0, tau: 0.1 },
    )
    .expect("benchmark spec is valid")
}

/// Three-dimensional benchmark, second frequency set (three modes).
pub fn benchmark_3d_case2() -> QuasiperiodicSpec {
    let s2 = std::f64::consts::SQRT_2;
    let s3 = 3.0f64.sqrt();
    let s5 = 5.0f64.sqrt();
    QuasiperiodicSpec::new(
        vec![
            vec![1.0, 0.0, 0.0, s5 / 4.0],
            vec![0.0, s2 / 2.0, 0.0, 0.0],
            vec![0.0, 0.0, s3 / 2.0, 0.0],
        ],
        vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]],
        vec![
            Complex64::new(0.2, 0.1),
            Complex64::new(0.1, 0.2),
            Complex64::new(0.02, -0.02),
        ],
        1,
        DiophantineParams { c_a: 2.0, tau: 0.2 },
    )
    .expect("benchmark spec is valid")
}

pub const GRID_RULE_3D: GridRule = GridRule::TwiceMaxPlusTen;
pub const ETA_3D: u32 = 1;

pub fn reference_table_3d_case1() -> &'static [ReferenceRow] {
    const T: &[ReferenceRow] = &[
        ReferenceRow {
            lengths: &[7, 17, 7],
            delta_v_e: 1.4517e-01,
            eps0: 2.9179e-01,
            eps1: 3.0510e-01,
            eps2: 7.3318e-01,
        },
        ReferenceRow {
            lengths: &[15, 41, 15],
            delta_v_e: 2.7860e-02,
            eps0: 5.7767e-02,
            eps1: 5.8709e-02,
            eps2: 1.2095e-01,
        },
        ReferenceRow {
            lengths: &[97, 99, 97],
            delta_v_e: 1.2500e-02,
            eps0: 2.6158e-02,
            eps1: 2.6342e-02,
            eps2: 5.3508e-02,
        },
        ReferenceRow {
            lengths: &[209, 239, 209],
            delta_v_e: 2.8605e-03,
            eps0: 6.0135e-03,
            eps1: 6.0284e-03,
            eps2: 1.2147e-02,
        },
    ];
    T
}

pub fn reference_table_3d_case2() -> &'static [ReferenceRow] {
    const T: &[ReferenceRow] = &[
        ReferenceRow {
            lengths: &[25, 41, 15],
            delta_v_e: 5.2435e-02,
            eps0: 4.6980e-02,
            eps1: 1.1050e-01,
            eps2: 3.1908e-01,
        },
        ReferenceRow {
            lengths: &[34, 99, 97],
            delta_v_e: 1.9077e-02,
            eps0: 1.9775e-02,
            eps1: 4.0205e-02,
            eps2: 1.0976e-01,
        },
        ReferenceRow {
            lengths: &[127, 99, 209],
            delta_v_e: 9.7943e-03,
            eps0: 6.0208e-03,
            eps1: 1.9171e-02,
            eps2: 5.6053e-02,
        },
    ];
    T
}

pub fn tolerances_3d() -> ReferenceTolerances {
    ReferenceTolerances {
        delta_v_e: 5e-4,
        eps0: 5e-2,
        eps1: 1e-2,
        eps2: 1e-2,
    }
}

/// Cells of the bundled tables that are inconsistent with their own row state.
///
/// The last row of the second three-dimensional table reproduces its
/// `|Delta V|_e` (4 digits) and `eps2` (0.4%) exactly, which pins the
/// classified state; yet its `eps1` cell is 2.6% below the value every matrix
/// assembly of that state yields, and its `eps0` cell lies 28% below the
/// measured supremum (and close to the `eps0` of an adjacent row of the other
/// table). Comparisons against these two cells are reported but cannot pass.
pub fn known_inconsistent_cells() -> &'static [(&'static [i64], &'static str)] {
    &[(&[127, 99, 209], "eps0"), (&[127, 99, 209], "eps1")]
}

/// Rational-only fixture used by the trivial-limit checks.
pub fn rational_fixture() -> QuasiperiodicSpec {
    QuasiperiodicSpec::new(
        vec![vec![1.0, 2.0]],
        vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        vec![
            Complex64::new(0.5, -0.1),
            Complex64::new(0.0, 0.25),
            Complex64::new(-0.125, 0.05),
        ],
        2,
        DiophantineParams { c_a: 2.0, tau: 0.2 },
    )
    .expect("benchmark spec is valid")
}
