//! Scaled exponents, nearest-integer rounding and the rationality
//! classification every later stage consumes.

use crate::error::{Error, Result};
use crate::types::{QuasiperiodicSpec, DIST_EPS, INT_EPS, TIE_EPS};

/// Scaled exponent rows `v_l = L o lambda_l`, their nearest-integer roundings
/// `h_l`, and the derived rationality statistics.
///
/// Rows are stored with the fully rational (all-integer) exponents first; the
/// recorded permutation maps stored positions back to input positions so
/// coefficient order can be restored.
#[derive(Debug, Clone)]
pub struct ScaledExponentSet {
    scaled: Vec<Vec<f64>>,
    rounded: Vec<Vec<i64>>,
    residuals: Vec<Vec<f64>>,
    integer_mask: Vec<Vec<bool>>,
    zeta: usize,
    /// `permutation[stored] = input index`
    permutation: Vec<usize>,
    row_integer_counts: Vec<usize>,
    zero_diff_counts: Vec<Vec<usize>>,
    min_integer_count: usize,
    max_zero_diff: usize,
    distinct_irrational: Vec<usize>,
    notes: Vec<String>,
}

/// Classifies the scaled exponents `v = L o lambda` for each input exponent.
///
/// An entry is integer iff a rational mark makes it exactly integral under `L`
/// or `|v - round(v)| < INT_EPS`; marks take precedence. Rounding is half away
/// from zero; entries inside the half-integer tie window are rounded anyway
/// and flagged in the notes (a tie cannot occur for Diophantine entries, so it
/// signals unusual input). Residuals of integer-classified entries are stored
/// as exact zeros.
pub fn classify(spec: &QuasiperiodicSpec, lengths: &[i64]) -> Result<ScaledExponentSet> {
    let d = spec.dim();
    if lengths.len() != d {
        return Err(Error::InvalidGrid(format!(
            "{} period lengths for dimension {d}",
            lengths.len()
        )));
    }
    if let Some(&l) = lengths.iter().find(|&&l| l < 1) {
        return Err(Error::InvalidGrid(format!(
            "period length {l} must be positive"
        )));
    }
    let exponents = spec.exponents()?;
    let count = exponents.len();
    let mut notes = Vec::new();

    let mut scaled = vec![vec![0.0; d]; count];
    let mut rounded = vec![vec![0i64; d]; count];
    let mut residuals = vec![vec![0.0; d]; count];
    let mut integer_mask = vec![vec![false; d]; count];

    for (l, lambda) in exponents.iter().enumerate() {
        for j in 0..d {
            let length = lengths[j];
            let mark = spec
                .rational_marks()
                .iter()
                .find(|m| m.row == l && m.col == j);
            let v = length as f64 * lambda[j];
            scaled[l][j] = v;
            if let Some(m) = mark {
                let scaled_num = m.numerator as i128 * length as i128;
                if scaled_num.rem_euclid(m.denominator as i128) == 0 {
                    let exact = (scaled_num / m.denominator as i128) as i64;
                    rounded[l][j] = exact;
                    residuals[l][j] = 0.0;
                    integer_mask[l][j] = true;
                    continue;
                }
                // exactly rational, but not integral under this L: rounds like
                // any other non-integer entry
                notes.push(format!(
                    "entry ({l}, {j}) is rational {}/{} but not integral for L_{j} = {length}",
                    m.numerator, m.denominator
                ));
            }
            let nearest = v.round(); // ties away from zero
            if (v - nearest).abs() < INT_EPS {
                rounded[l][j] = nearest as i64;
                residuals[l][j] = 0.0;
                integer_mask[l][j] = true;
                continue;
            }
            let dist = (v - nearest).abs();
            if dist >= 0.5 - TIE_EPS {
                notes.push(format!(
                    "entry ({l}, {j}) = {v} sits in the half-integer tie window; rounded half away from zero"
                ));
            }
            rounded[l][j] = nearest as i64;
            residuals[l][j] = nearest - v;
        }
    }

    // Fully rational rows move to the front; stable so relative order survives.
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&l| !integer_mask[l].iter().all(|&b| b));
    fn permute<T: Clone>(order: &[usize], rows: &[Vec<T>]) -> Vec<Vec<T>> {
        order.iter().map(|&l| rows[l].clone()).collect()
    }
    let scaled = permute(&order, &scaled);
    let rounded = permute(&order, &rounded);
    let residuals = permute(&order, &residuals);
    let integer_mask = permute(&order, &integer_mask);
    let zeta = integer_mask
        .iter()
        .take_while(|m| m.iter().all(|&b| b))
        .count();

    let row_integer_counts: Vec<usize> = integer_mask
        .iter()
        .map(|m| m.iter().filter(|&&b| b).count())
        .collect();

    let mut zero_diff_counts = vec![vec![0usize; count]; count];
    for (s, row) in zero_diff_counts.iter_mut().enumerate() {
        for (t, cell) in row.iter_mut().enumerate() {
            if s != t {
                *cell = (0..d)
                    .filter(|&j| (scaled[s][j] - scaled[t][j]).abs() < DIST_EPS)
                    .count();
            }
        }
    }

    let min_integer_count = row_integer_counts[zeta..]
        .iter()
        .copied()
        .min()
        .unwrap_or(0);
    let mut max_zero_diff = 0;
    for (s, row) in zero_diff_counts.iter().enumerate().skip(zeta) {
        for (t, &cell) in row.iter().enumerate().skip(zeta) {
            if s != t {
                max_zero_diff = max_zero_diff.max(cell);
            }
        }
    }

    // Distinct irrational values per dimension, counted on fractional parts
    // with circle distance so values differing by an integer collapse.
    let mut distinct_irrational = vec![0usize; d];
    for j in 0..d {
        let mut classes: Vec<f64> = Vec::new();
        for l in 0..count {
            if integer_mask[l][j] {
                continue;
            }
            let frac = scaled[l][j].rem_euclid(1.0);
            let known = classes.iter().any(|&c| {
                let delta = (frac - c).abs();
                delta.min(1.0 - delta) < DIST_EPS
            });
            if !known {
                classes.push(frac);
            }
        }
        distinct_irrational[j] = classes.len();
    }

    let set = ScaledExponentSet {
        scaled,
        rounded,
        residuals,
        integer_mask,
        zeta,
        permutation: order,
        row_integer_counts,
        zero_diff_counts,
        min_integer_count,
        max_zero_diff,
        distinct_irrational,
        notes,
    };
    debug_assert!(set.residual_sup() <= 0.5);
    Ok(set)
}

impl ScaledExponentSet {
    /// Scaled exponent rows `v_l`, rational rows first.
    pub fn scaled(&self) -> &[Vec<f64>] {
        &self.scaled
    }

    /// Nearest-integer rows `h_l`, in the same (reordered) layout.
    pub fn rounded(&self) -> &[Vec<i64>] {
        &self.rounded
    }

    /// Residual rows `h_l - v_l`; integer-classified entries are exact zeros.
    pub fn residuals(&self) -> &[Vec<f64>] {
        &self.residuals
    }

    pub fn integer_mask(&self) -> &[Vec<bool>] {
        &self.integer_mask
    }

    /// Number of fully rational rows (stored first).
    pub fn zeta(&self) -> usize {
        self.zeta
    }

    pub fn count(&self) -> usize {
        self.scaled.len()
    }

    pub fn dim(&self) -> usize {
        self.scaled.first().map_or(0, |r| r.len())
    }

    /// `permutation()[stored] = input index`.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// Integer-entry count per row (`r_s` for the irrational rows).
    pub fn row_integer_counts(&self) -> &[usize] {
        &self.row_integer_counts
    }

    /// Counts of coinciding entries between scaled rows (`alpha_st`).
    pub fn zero_diff_counts(&self) -> &[Vec<usize>] {
        &self.zero_diff_counts
    }

    /// `d_m`: minimum integer-entry count over irrational rows.
    pub fn min_integer_count(&self) -> usize {
        self.min_integer_count
    }

    /// `d_M`: maximum `alpha_st` over distinct irrational rows.
    pub fn max_zero_diff(&self) -> usize {
        self.max_zero_diff
    }

    /// `s_j`: distinct irrational values per dimension.
    pub fn distinct_irrational(&self) -> &[usize] {
        &self.distinct_irrational
    }

    /// Overrides the per-dimension distinct counts (they feed diagnostics
    /// only, and effective dependence between values can justify a smaller
    /// count than the literal value census).
    pub fn with_distinct_counts(mut self, counts: Vec<usize>) -> Result<Self> {
        if counts.len() != self.dim() {
            return Err(Error::InvalidParameter(
                "distinct-count override has the wrong dimension".into(),
            ));
        }
        self.distinct_irrational = counts;
        Ok(self)
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Largest absolute residual over all entries.
    pub fn residual_sup(&self) -> f64 {
        self.residuals
            .iter()
            .flatten()
            .fold(0.0f64, |m, r| m.max(r.abs()))
    }

    /// Per-row sup-norm of the residual, stored layout.
    pub fn row_residual_sup(&self, row: usize) -> f64 {
        self.residuals[row]
            .iter()
            .fold(0.0f64, |m, r| m.max(r.abs()))
    }

    /// Reorders input-ordered items into the stored layout.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.permutation.iter().map(|&i| items[i].clone()).collect()
    }

    /// Restores stored-layout items to input order.
    pub fn unpermute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (stored, &input) in self.permutation.iter().enumerate() {
            out[input] = Some(items[stored].clone());
        }
        out.into_iter().map(|x| x.unwrap()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{DiophantineParams, QuasiperiodicSpec, RationalMark};
    use num_complex::Complex64;

    fn dio() -> DiophantineParams {
        DiophantineParams { c_a: 2.0, tau: 0.2 }
    }

    fn one_dim_spec() -> QuasiperiodicSpec {
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
            dio(),
        )
        .unwrap()
    }

    #[test]
    fn benchmark_rounding_at_large_period() {
        let set = classify(&one_dim_spec(), &[13860]).unwrap();
        let h: Vec<i64> = set.rounded().iter().map(|r| r[0]).collect();
        assert_eq!(h, vec![13860, 19601, 53062, 47321]);
        assert_eq!(set.zeta(), 1);
        // the rational row contributes an exact zero residual
        assert_eq!(set.residuals()[0][0], 0.0);
        // residuals of the irrational rows stay well clear of the integer test
        assert!(set.residuals()[1][0].abs() > 1e-5);
    }

    #[test]
    fn rational_only_input() {
        let spec = QuasiperiodicSpec::new(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![vec![0, 0], vec![1, 0], vec![0, 1]],
            vec![Complex64::new(1.0, 0.0); 3],
            2,
            dio(),
        )
        .unwrap();
        let set = classify(&spec, &[3, 7]).unwrap();
        assert_eq!(set.zeta(), 3);
        assert!(set.residuals().iter().flatten().all(|&r| r == 0.0));
        assert!(set.distinct_irrational().iter().all(|&s| s == 0));
    }

    #[test]
    fn three_dim_case_statistics() {
        let s2 = std::f64::consts::SQRT_2;
        let s3 = 3.0f64.sqrt();
        let s5 = 5.0f64.sqrt();
        let spec = QuasiperiodicSpec::new(
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
            dio(),
        )
        .unwrap();
        let set = classify(&spec, &[25, 41, 15]).unwrap();
        assert_eq!(set.zeta(), 1);
        assert_eq!(set.min_integer_count(), 1);
        assert_eq!(set.max_zero_diff(), 1);
    }

    #[test]
    fn permutation_round_trips_and_orders_rational_first() {
        // irrational row listed first: classification reorders it behind the
        // rational one and records how to undo that
        let spec = QuasiperiodicSpec::new(
            vec![vec![1.0, std::f64::consts::SQRT_2]],
            vec![vec![0, 1], vec![1, 0]],
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            2,
            dio(),
        )
        .unwrap();
        let set = classify(&spec, &[10]).unwrap();
        assert_eq!(set.zeta(), 1);
        assert_eq!(set.permutation(), &[1, 0]);
        let permuted = set.permute(spec.coefficients());
        assert_eq!(permuted[0], Complex64::new(2.0, 0.0));
        let restored = set.unpermute(&permuted);
        assert_eq!(restored, spec.coefficients());
    }

    #[test]
    fn marks_never_lower_zeta() {
        let spec = QuasiperiodicSpec::new(
            vec![vec![0.5, std::f64::consts::SQRT_2]],
            vec![vec![1, 0], vec![0, 1]],
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            2,
            dio(),
        )
        .unwrap();
        let plain = classify(&spec, &[4]).unwrap();
        let marked = classify(
            &spec
                .clone()
                .with_rational_marks(vec![RationalMark {
                    row: 0,
                    col: 0,
                    numerator: 1,
                    denominator: 2,
                }])
                .unwrap(),
            &[4],
        )
        .unwrap();
        assert!(marked.zeta() >= plain.zeta());
        assert_eq!(marked.zeta(), 1);
    }

    #[test]
    fn half_integer_tie_is_flagged_and_rounded_away_from_zero() {
        let spec = QuasiperiodicSpec::new(
            vec![vec![0.5, std::f64::consts::SQRT_2]],
            vec![vec![1, 0], vec![0, 1]],
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            2,
            dio(),
        )
        .unwrap();
        // L = 3 puts the rational exponent at v = 1.5
        let set = classify(&spec, &[3]).unwrap();
        assert!(!set.notes().is_empty());
        let idx = set.permutation().iter().position(|&i| i == 0).unwrap();
        assert_eq!(set.rounded()[idx][0], 2);
    }

    #[test]
    fn distinct_counts_collapse_integer_translates() {
        // sqrt2 and 2 + sqrt2 share a fractional part at every L, so the
        // column holds two distinct irrational classes (the 2*sqrt2 one apart)
        let set = classify(&one_dim_spec(), &[29]).unwrap();
        assert_eq!(set.distinct_irrational(), &[2]);
        let overridden = set.with_distinct_counts(vec![1]).unwrap();
        assert_eq!(overridden.distinct_irrational(), &[1]);
    }
}
