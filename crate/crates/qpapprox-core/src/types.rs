//! Domain types shared by every stage of the pipeline.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used to decide whether a scaled exponent entry is an integer.
///
/// Absolute on purpose: true integer entries are exact to a few ulps while the
/// residual of an irrational entry is bounded below by the Diophantine
/// condition (roughly `C_a / L^(1+tau)`), which stays far above 1e-9 for every
/// practical period length. A relative tolerance would swallow genuine
/// residuals once the scaled entries reach ~1e5.
pub const INT_EPS: f64 = 1e-9;

/// Width of the half-integer tie window flagged during rounding.
pub const TIE_EPS: f64 = 1e-9;

/// Tolerance for collapsing equal values when counting distinct irrational
/// entries per dimension (applied to fractional parts, circle distance).
pub const DIST_EPS: f64 = 1e-9;

/// Diophantine reporting parameters `(C_a, tau)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiophantineParams {
    pub c_a: f64,
    pub tau: f64,
}

/// Declares that one exponent entry is exactly `numerator / denominator`.
///
/// Marks take precedence over the floating-point integer test and let the
/// classifier treat rational entries exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalMark {
    pub row: usize,
    pub col: usize,
    pub numerator: i64,
    pub denominator: i64,
}

/// A finite quasiperiodic trigonometric sum
/// `f(x) = sum_l a_l exp(i 2 pi lambda_l . x)` with `lambda_l = P k_l`.
#[derive(Debug, Clone)]
pub struct QuasiperiodicSpec {
    dim: usize,
    rank: usize,
    projection: DMatrix<f64>,
    lattice: Vec<Vec<i64>>,
    coefficients: Vec<Complex64>,
    cutoff: i64,
    diophantine: DiophantineParams,
    rational_marks: Vec<RationalMark>,
}

impl QuasiperiodicSpec {
    /// Validates and builds a spec.
    ///
    /// `projection` is the d x n matrix in row-major order, `lattice` holds the
    /// integer vectors `k_l` (entries in `[-cutoff, cutoff)`), and
    /// `coefficients` the matching complex amplitudes.
    pub fn new(
        projection_rows: Vec<Vec<f64>>,
        lattice: Vec<Vec<i64>>,
        coefficients: Vec<Complex64>,
        cutoff: i64,
        diophantine: DiophantineParams,
    ) -> Result<Self> {
        let dim = projection_rows.len();
        if dim == 0 {
            return Err(Error::InvalidSpec("projection matrix has no rows".into()));
        }
        let rank = projection_rows[0].len();
        if rank < dim {
            return Err(Error::InvalidSpec(format!(
                "rank {rank} must be at least the dimension {dim}"
            )));
        }
        if projection_rows.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidSpec(
                "projection rows have unequal lengths".into(),
            ));
        }
        if projection_rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSpec(
                "projection entries must be finite".into(),
            ));
        }
        if lattice.is_empty() {
            return Err(Error::InvalidSpec(
                "at least one lattice vector is required".into(),
            ));
        }
        if lattice.len() != coefficients.len() {
            return Err(Error::InvalidSpec(format!(
                "{} lattice vectors but {} coefficients",
                lattice.len(),
                coefficients.len()
            )));
        }
        if cutoff < 1 {
            return Err(Error::InvalidSpec("cutoff N must be positive".into()));
        }
        for (l, k) in lattice.iter().enumerate() {
            if k.len() != rank {
                return Err(Error::InvalidSpec(format!(
                    "lattice vector {l} has length {} but rank is {rank}",
                    k.len()
                )));
            }
            if k.iter().any(|&kj| kj.abs() > cutoff) {
                return Err(Error::InvalidSpec(format!(
                    "lattice vector {l} = {k:?} has sup norm above N = {cutoff}"
                )));
            }
        }
        for (a, ka) in lattice.iter().enumerate() {
            for (b, kb) in lattice.iter().enumerate().skip(a + 1) {
                if ka == kb {
                    return Err(Error::InvalidSpec(format!(
                        "lattice vectors {a} and {b} are identical"
                    )));
                }
            }
        }
        if !(diophantine.c_a > 0.0 && diophantine.tau > 0.0) {
            return Err(Error::InvalidSpec(
                "Diophantine parameters must be positive".into(),
            ));
        }
        let projection = DMatrix::from_fn(dim, rank, |i, j| projection_rows[i][j]);
        let spec = Self {
            dim,
            rank,
            projection,
            lattice,
            coefficients,
            cutoff,
            diophantine,
            rational_marks: Vec::new(),
        };
        // Projected exponents must be pairwise distinct.
        spec.exponents()?;
        Ok(spec)
    }

    /// Attaches exact rational annotations for individual exponent entries.
    pub fn with_rational_marks(mut self, marks: Vec<RationalMark>) -> Result<Self> {
        let exps = self.exponents()?;
        for m in &marks {
            if m.row >= self.count() || m.col >= self.dim {
                return Err(Error::InvalidSpec(format!(
                    "rational mark ({}, {}) is out of range",
                    m.row, m.col
                )));
            }
            if m.denominator == 0 {
                return Err(Error::InvalidSpec(
                    "rational mark with zero denominator".into(),
                ));
            }
            let claimed = m.numerator as f64 / m.denominator as f64;
            if (claimed - exps[m.row][m.col]).abs() > 1e-6 {
                return Err(Error::InvalidSpec(format!(
                    "rational mark {}/{} contradicts exponent entry ({}, {}) = {}",
                    m.numerator, m.denominator, m.row, m.col, exps[m.row][m.col]
                )));
            }
        }
        self.rational_marks = marks;
        Ok(self)
    }

    /// Projected exponents `lambda_l = P k_l`, in input order.
    ///
    /// Fails when two lattice vectors become indistinguishable under `P` at
    /// working precision.
    pub fn exponents(&self) -> Result<Vec<Vec<f64>>> {
        let mut out = Vec::with_capacity(self.lattice.len());
        for k in &self.lattice {
            let mut lambda = vec![0.0; self.dim];
            for (j, l) in lambda.iter_mut().enumerate() {
                let mut acc = 0.0;
                for (c, &kc) in k.iter().enumerate() {
                    acc += self.projection[(j, c)] * kc as f64;
                }
                *l = acc;
            }
            out.push(lambda);
        }
        for a in 0..out.len() {
            for b in (a + 1)..out.len() {
                let close = out[a]
                    .iter()
                    .zip(&out[b])
                    .all(|(x, y)| (x - y).abs() <= INT_EPS * x.abs().max(y.abs()).max(1.0));
                if close {
                    return Err(Error::DuplicateExponent {
                        first: a,
                        second: b,
                    });
                }
            }
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of terms `D`.
    pub fn count(&self) -> usize {
        self.lattice.len()
    }

    pub fn projection(&self) -> &DMatrix<f64> {
        &self.projection
    }

    /// Max column absolute sum of `P`.
    pub fn projection_norm1(&self) -> f64 {
        (0..self.rank)
            .map(|j| {
                (0..self.dim)
                    .map(|i| self.projection[(i, j)].abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn lattice(&self) -> &[Vec<i64>] {
        &self.lattice
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn diophantine(&self) -> DiophantineParams {
        self.diophantine
    }

    pub fn rational_marks(&self) -> &[RationalMark] {
        &self.rational_marks
    }

    /// Largest possible sup-norm of a difference of two lattice vectors,
    /// `2N - 1` for entries in `[-N, N)`. This is the sharp constant behind
    /// the separation bound on pairs of scaled exponents.
    pub fn lattice_span(&self) -> i64 {
        2 * self.cutoff - 1
    }
}

/// Named rules for deriving the grid vector `G` from the periods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridRule {
    /// `G_j = 10 L_j`
    TenTimesL,
    /// `G_j = 2 max(L) + 10` in every dimension
    TwiceMaxPlusTen,
}

impl GridRule {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "10L" => Ok(GridRule::TenTimesL),
            "2Lmax+10" => Ok(GridRule::TwiceMaxPlusTen),
            other => Err(Error::InvalidParameter(format!(
                "unknown grid rule {other:?}; expected \"10L\" or \"2Lmax+10\""
            ))),
        }
    }

    pub fn nodes_for(&self, lengths: &[i64]) -> Vec<i64> {
        match self {
            GridRule::TenTimesL => lengths.iter().map(|&l| 10 * l).collect(),
            GridRule::TwiceMaxPlusTen => {
                let m = lengths.iter().copied().max().unwrap_or(1);
                vec![2 * m + 10; lengths.len()]
            }
        }
    }
}

/// Period lengths `L`, discretization nodes `G` and window order `eta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodGrid {
    lengths: Vec<i64>,
    nodes: Vec<i64>,
    eta: u32,
}

impl PeriodGrid {
    pub fn new(lengths: Vec<i64>, nodes: Vec<i64>, eta: u32) -> Result<Self> {
        if lengths.is_empty() || lengths.len() != nodes.len() {
            return Err(Error::InvalidGrid(format!(
                "{} periods but {} node counts",
                lengths.len(),
                nodes.len()
            )));
        }
        if eta < 1 {
            return Err(Error::InvalidGrid(
                "window order eta must be at least 1".into(),
            ));
        }
        if let Some(&l) = lengths.iter().find(|&&l| l < 1) {
            return Err(Error::InvalidGrid(format!(
                "period length {l} must be positive"
            )));
        }
        for &g in &nodes {
            if g % 2 != 0 {
                return Err(Error::InvalidGrid(format!(
                    "node count {g} must be even (the index set pairs -G/2 .. G/2-1)"
                )));
            }
            if g <= 2 * eta as i64 {
                return Err(Error::InvalidGrid(format!(
                    "node count {g} must exceed 2 eta = {} for exact window normalization",
                    2 * eta
                )));
            }
        }
        Ok(Self {
            lengths,
            nodes,
            eta,
        })
    }

    pub fn from_rule(lengths: Vec<i64>, rule: GridRule, eta: u32) -> Result<Self> {
        let nodes = rule.nodes_for(&lengths);
        Self::new(lengths, nodes, eta)
    }

    pub fn lengths(&self) -> &[i64] {
        &self.lengths
    }

    pub fn nodes(&self) -> &[i64] {
        &self.nodes
    }

    pub fn eta(&self) -> u32 {
        self.eta
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn min_length(&self) -> i64 {
        *self.lengths.iter().min().unwrap()
    }

    pub fn max_length(&self) -> i64 {
        *self.lengths.iter().max().unwrap()
    }

    pub fn min_nodes(&self) -> i64 {
        *self.nodes.iter().min().unwrap()
    }

    /// Membership of an integer vector in the index set
    /// `K_G = { -G/2 <= j <= G/2 - 1 }`.
    pub fn contains_index(&self, idx: &[i64]) -> bool {
        idx.len() == self.nodes.len()
            && idx
                .iter()
                .zip(&self.nodes)
                .all(|(&h, &g)| h >= -g / 2 && h < g / 2)
    }
}

/// Periodic trigonometric sum `f_p(x) = sum_l b_l exp(i 2 pi h_l . x / L)`.
#[derive(Debug, Clone)]
pub struct PeriodicApproximant {
    lengths: Vec<i64>,
    exponents: Vec<Vec<i64>>,
    coefficients: Vec<Complex64>,
}

impl PeriodicApproximant {
    pub fn new(
        lengths: Vec<i64>,
        exponents: Vec<Vec<i64>>,
        coefficients: Vec<Complex64>,
    ) -> Result<Self> {
        if exponents.len() != coefficients.len() || exponents.is_empty() {
            return Err(Error::InvalidSpec(
                "approximant needs matching, nonempty exponent and coefficient lists".into(),
            ));
        }
        if exponents.iter().any(|h| h.len() != lengths.len()) {
            return Err(Error::InvalidSpec(
                "approximant exponent dimension mismatch".into(),
            ));
        }
        for a in 0..exponents.len() {
            for b in (a + 1)..exponents.len() {
                if exponents[a] == exponents[b] {
                    return Err(Error::InvalidSpec(format!(
                        "approximant exponents {a} and {b} coincide"
                    )));
                }
            }
        }
        Ok(Self {
            lengths,
            exponents,
            coefficients,
        })
    }

    pub fn lengths(&self) -> &[i64] {
        &self.lengths
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Evaluates `f_p` at `x`; periodic in each coordinate with period `L_j`.
    pub fn evaluate(&self, x: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (h, b) in self.exponents.iter().zip(&self.coefficients) {
            let mut phase = 0.0;
            for ((&hj, &xj), &lj) in h.iter().zip(x).zip(&self.lengths) {
                let t = hj as f64 * xj / lj as f64;
                phase += t - t.round();
            }
            phase -= phase.round();
            acc += b * Complex64::cis(std::f64::consts::TAU * phase);
        }
        acc
    }
}

/// Measured error and certified bounds for one solved instance.
#[derive(Debug, Clone)]
pub struct ErrorReport {
    /// Entrywise rounding residual sum.
    pub delta_v_e: f64,
    /// Measured sup error (absent when the sup search was skipped).
    pub eps0: Option<f64>,
    /// Semi-empirical bound from the numeric inverse.
    pub eps1: f64,
    /// Fully analytic bound from the constants chain.
    pub eps2: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub y2: f64,
    pub b_max: f64,
    pub admissible_full: bool,
    pub admissible_weak: bool,
    pub notes: Vec<String>,
}
