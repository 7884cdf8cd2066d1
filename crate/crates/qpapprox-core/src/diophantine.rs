//! Nearest-integer residual metrics, best simultaneous approximation
//! records, the Dirichlet benchmark and the Diophantine condition check.

use crate::classify::ScaledExponentSet;
use crate::error::{Error, Result};
use crate::types::{QuasiperiodicSpec, INT_EPS};

/// Record sequence of the column residual error `e(L)`.
///
/// Records are global: the running minimum is seeded from `L = 1`, so a
/// reported record beats every smaller period, not just the scanned ones.
/// The `[l_min, l_max]` range only selects which records are reported.
#[derive(Debug, Clone)]
pub struct BestApproxSequence {
    pub dim_index: usize,
    /// `(t_k, e(t_k))` with `t_k` increasing and `e` strictly decreasing.
    pub records: Vec<(i64, f64)>,
    pub search_limit: i64,
}

/// Column residual `e(L) = sum_l |L lambda_l - round(L lambda_l)|` over the
/// entries classified irrational at this `L`; integer-classified entries
/// contribute exactly zero.
pub fn column_error(column: &[f64], length: i64) -> f64 {
    let mut acc = 0.0;
    for &lambda in column {
        let v = length as f64 * lambda;
        let r = (v - v.round()).abs();
        if r >= INT_EPS {
            acc += r;
        }
    }
    acc
}

/// Scans periods up to `l_max` and reports the strictly decreasing records of
/// `e(L)` that fall inside `[l_min, l_max]`.
///
/// The scan itself always starts at 1 so the record floor is global;
/// restricting the scan to the window would otherwise promote locally-best
/// periods that a smaller period already beats.
pub fn best_sequence(column: &[f64], l_min: i64, l_max: i64) -> Result<BestApproxSequence> {
    if l_min < 1 || l_min > l_max {
        return Err(Error::EmptyRange(format!(
            "invalid period range [{l_min}, {l_max}]"
        )));
    }
    const SCAN_CAP: i64 = 10_000_000;
    if l_max > SCAN_CAP {
        return Err(Error::InvalidParameter(format!(
            "scan limit {l_max} exceeds the supported cap of {SCAN_CAP}"
        )));
    }
    let mut records = Vec::new();
    let mut best = f64::INFINITY;
    for length in 1..=l_max {
        let e = column_error(column, length);
        if e < best {
            best = e;
            if length >= l_min {
                records.push((length, e));
            }
            if e == 0.0 {
                break; // zero error is an immediate record floor
            }
        }
    }
    if records.is_empty() && best == 0.0 {
        // a zero floor holds at every period, so the first in-range period is
        // as good as any record
        records.push((l_min, 0.0));
    }
    Ok(BestApproxSequence {
        dim_index: 0,
        records,
        search_limit: l_max,
    })
}

impl BestApproxSequence {
    /// Growth diagnostics `t_k^(1/k)`: record periods grow at least
    /// geometrically, so these settle above 1. Reported, not verified.
    pub fn geometric_growth(&self) -> Vec<f64> {
        self.records
            .iter()
            .enumerate()
            .map(|(k, &(t, _))| (t as f64).powf(1.0 / (k + 1) as f64))
            .collect()
    }
}

/// Dirichlet simultaneous-approximation benchmark `C_s L^(-1/s)` with
/// `C_s = s / (s + 1)`.
pub fn dirichlet_bound(s: u32, length: i64) -> f64 {
    let s = s as f64;
    s / (s + 1.0) * (length as f64).powf(-1.0 / s)
}

/// One entrywise Diophantine check `|lambda| > C_a / |k|_inf^(2+tau)`.
#[derive(Debug, Clone)]
pub struct DiophantineCheck {
    pub row: usize,
    pub col: usize,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    pub pass: bool,
}

/// Per-entry report of the special-case Diophantine condition.
#[derive(Debug, Clone)]
pub struct DiophantineReport {
    pub entries: Vec<DiophantineCheck>,
    pub all_pass: bool,
}

/// Verifies `|lambda_{l,j}| > C_a / |k_l|_inf^(2+tau)` for every entry
/// classified irrational. Failures are data, not errors: the stated
/// `(C_a, tau)` are reporting parameters, not certified constants.
pub fn check_diophantine(spec: &QuasiperiodicSpec) -> Result<DiophantineReport> {
    let exponents = spec.exponents()?;
    let p = spec.diophantine();
    let mut entries = Vec::new();
    for (l, lambda) in exponents.iter().enumerate() {
        let k_inf = spec.lattice()[l].iter().map(|k| k.abs()).max().unwrap_or(0);
        for (j, &value) in lambda.iter().enumerate() {
            let marked_rational = spec
                .rational_marks()
                .iter()
                .any(|m| m.row == l && m.col == j);
            let integral = (value - value.round()).abs() < INT_EPS;
            if marked_rational || integral {
                continue;
            }
            let bound = if k_inf == 0 {
                f64::INFINITY
            } else {
                p.c_a / (k_inf as f64).powf(2.0 + p.tau)
            };
            let margin = value.abs() - bound;
            entries.push(DiophantineCheck {
                row: l,
                col: j,
                value,
                bound,
                margin,
                pass: margin > 0.0,
            });
        }
    }
    let all_pass = entries.iter().all(|e| e.pass);
    Ok(DiophantineReport { entries, all_pass })
}

/// Entrywise residual sum `|Delta V|_e = sum_l sum_j |h_{l,j} - v_{l,j}|`.
pub fn delta_v_norm(set: &ScaledExponentSet) -> f64 {
    set.residuals().iter().flatten().map(|r| r.abs()).sum()
}
