//! The certified error-bound chain: admissibility conditions, the g-function
//! family, the x-constants, and the bounds `eps1` (semi-empirical) and `eps2`
//! (fully analytic).
//!
//! Separation of a scaled exponent pair rests on the Diophantine condition
//! applied to differences of lattice vectors, whose sup-norm is at most
//! `2N - 1` for entries in `[-N, N)`. All separation constants here use that
//! sharp span; the reference tables are only reproduced with it.

use crate::approx::CoefficientSystem;
use crate::classify::ScaledExponentSet;
use crate::diophantine::delta_v_norm;
use crate::error::{Error, Result};
use crate::types::{PeriodGrid, QuasiperiodicSpec};
use std::f64::consts::PI;

/// Everything the analytic bounds consume, recomputed from the primary
/// objects rather than trusted from callers.
#[derive(Debug, Clone)]
pub struct BoundInputs {
    pub dim: usize,
    pub count: usize,
    pub zeta: usize,
    pub cutoff: i64,
    pub lattice_span: i64,
    pub eta: u32,
    pub d_m: usize,
    pub d_max_coincide: usize,
    /// `r_s` for each irrational row (storage order).
    pub integer_counts: Vec<usize>,
    pub c_a: f64,
    pub tau: f64,
    pub l_min: i64,
    pub l_max: i64,
    pub g_min: i64,
    pub projection_norm1: f64,
    pub delta_v_e: f64,
    /// Per-irrational-row residual sup norms.
    pub row_residual_sup: Vec<f64>,
    pub b_max: f64,
}

impl BoundInputs {
    pub fn collect(
        spec: &QuasiperiodicSpec,
        grid: &PeriodGrid,
        set: &ScaledExponentSet,
        b_max: f64,
    ) -> Result<Self> {
        if !(b_max.is_finite() && b_max >= 0.0) {
            return Err(Error::InvalidParameter(
                "b_max must be a finite nonnegative real".into(),
            ));
        }
        let zeta = set.zeta();
        Ok(Self {
            dim: spec.dim(),
            count: set.count(),
            zeta,
            cutoff: spec.cutoff(),
            lattice_span: spec.lattice_span(),
            eta: grid.eta(),
            d_m: set.min_integer_count(),
            d_max_coincide: set.max_zero_diff(),
            integer_counts: set.row_integer_counts()[zeta..].to_vec(),
            c_a: spec.diophantine().c_a,
            tau: spec.diophantine().tau,
            l_min: grid.min_length(),
            l_max: grid.max_length(),
            g_min: grid.min_nodes(),
            projection_norm1: spec.projection_norm1(),
            delta_v_e: delta_v_norm(set),
            row_residual_sup: (zeta..set.count())
                .map(|s| set.row_residual_sup(s))
                .collect(),
            b_max,
        })
    }

    fn factorial(&self) -> f64 {
        (1..=self.eta as u64).product::<u64>().max(1) as f64
    }

    /// `L_min C_a / span^(2+tau) - 1/2 - eta`, the separation margin every
    /// `g0` power is built from.
    pub fn separation_margin(&self) -> f64 {
        self.l_min as f64 * self.c_a / (self.lattice_span as f64).powf(2.0 + self.tau)
            - 0.5
            - self.eta as f64
    }

    /// `G_min - 2 L_max |P|_1 N - 1/2 - eta`, the alias separation margin.
    pub fn alias_margin(&self) -> f64 {
        self.g_min as f64
            - 2.0 * self.l_max as f64 * self.projection_norm1 * self.cutoff as f64
            - 0.5
            - self.eta as f64
    }
}

/// The g-function family entering the x-constants.
pub struct GFunctions<'a> {
    inputs: &'a BoundInputs,
}

impl<'a> GFunctions<'a> {
    pub fn new(inputs: &'a BoundInputs) -> Self {
        Self { inputs }
    }

    /// `g0(t0) = (L_min C_a / span^(2+tau) - 1/2 - eta)^(-t0)`
    pub fn g0(&self, t0: f64) -> Result<f64> {
        let base = self.inputs.separation_margin();
        if base <= 0.0 {
            return Err(Error::Inadmissible(format!(
                "period separation margin L_min C_a / span^(2+tau) - 1/2 - eta = {base:.6} is not positive"
            )));
        }
        Ok(base.powf(-t0))
    }

    /// `g1(t1, t2) = (t1 G_min - max_s |v_s - h_s|_inf - eta)^(-t2)`
    pub fn g1(&self, t1: f64, t2: f64) -> Result<f64> {
        let vh = self
            .inputs
            .row_residual_sup
            .iter()
            .fold(0.0f64, |m, &r| m.max(r));
        let base = t1 * self.inputs.g_min as f64 - vh - self.inputs.eta as f64;
        if base <= 0.0 {
            return Err(Error::Inadmissible(format!(
                "alias base t1 G_min - |v - h|_inf - eta = {base:.6} is not positive"
            )));
        }
        Ok(base.powf(-t2))
    }

    /// `g2(r) = (eta (G_min - 1/2 - eta)^(2 eta + 1))^(-(d - r))`
    pub fn g2(&self, r: usize) -> Result<f64> {
        let eta = self.inputs.eta as f64;
        let base = self.inputs.g_min as f64 - 0.5 - eta;
        if base <= 0.0 {
            return Err(Error::Inadmissible(
                "G_min - 1/2 - eta is not positive".into(),
            ));
        }
        let inner = eta * base.powi(2 * self.inputs.eta as i32 + 1);
        Ok(inner.powi(-((self.inputs.dim - r) as i32)))
    }

    /// `g3(r) = (eta (G_min - 2 L_max |P|_1 N - 1/2 - eta)^(2 eta + 1))^(-(d - r))`
    pub fn g3(&self, r: usize) -> Result<f64> {
        let eta = self.inputs.eta as f64;
        let base = self.inputs.alias_margin();
        if base <= 0.0 {
            return Err(Error::Inadmissible(format!(
                "alias separation margin G_min - 2 L_max |P|_1 N - 1/2 - eta = {base:.6} is not positive"
            )));
        }
        let inner = eta * base.powi(2 * self.inputs.eta as i32 + 1);
        Ok(inner.powi(-((self.inputs.dim - r) as i32)))
    }
}

/// The constants feeding the analytic bound.
#[derive(Debug, Clone, Copy)]
pub struct XConstants {
    /// Diagonal-inverse bound (generic or sharpened, per request).
    pub x1: f64,
    /// Off-diagonal column bound of the irrational block, with the
    /// `(D - zeta - 1)` multiplicity factor.
    pub x2: f64,
    /// Per-entry variant of `x2` (no multiplicity factor); this is the one
    /// entering the rational-column coupling estimate.
    pub x2_single: f64,
    /// Aliasing bound of the irrational block.
    pub x3: f64,
    /// Aliasing part of the rational-column coupling.
    pub y2: f64,
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Assembles `(x1, x2, x3, y2)`.
///
/// The generic `x1` is `(5/3)^(d-d_m) (eta!)^(-2(d-d_m)) (1/2+eta)^(2 eta (d-d_m))`;
/// the sharpened variant replaces the worst-case residual 1/2 by each row's
/// measured residual sup, maximized over the irrational rows.
pub fn x_constants(inputs: &BoundInputs, sharpened: bool) -> Result<XConstants> {
    let d = inputs.dim;
    let eta = inputs.eta as f64;
    let fact = inputs.factorial();
    let irrational = inputs.count - inputs.zeta;
    if irrational == 0 {
        return Ok(XConstants {
            x1: 1.0,
            x2: 0.0,
            x2_single: 0.0,
            x3: 0.0,
            y2: 0.0,
        });
    }
    let g = GFunctions::new(inputs);
    let d_m = inputs.d_m;
    let d_cap = inputs.d_max_coincide;

    let x1 = if sharpened {
        let mut worst: f64 = 0.0;
        for (idx, &rs) in inputs.integer_counts.iter().enumerate() {
            let delta = inputs.row_residual_sup[idx];
            if delta >= 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "row residual {delta} reaches the sharpened-x1 pole; rounding is broken"
                )));
            }
            let free = (d - rs) as f64;
            let val = (delta + eta).powf(2.0 * eta * free)
                * ((1.0 + delta * delta) / (1.0 - delta * delta)).powf(free);
            worst = worst.max(val);
        }
        worst
    } else {
        let free = (d - d_m) as f64;
        (5.0f64 / 3.0).powf(free) * fact.powf(-2.0 * free) * (0.5 + eta).powf(2.0 * eta * free)
    };

    let g0_val = g.g0((2.0 * eta + 1.0) * (d - d_cap) as f64)?;
    let x2_single = fact.powi(2 * d as i32) / PI.powi((d - d_cap) as i32) * g0_val;
    let x2 = (irrational as f64 - 1.0) * x2_single;

    let mut x3 = 0.0;
    let mut y2 = 0.0;
    for r in d_m..d {
        let inner: f64 = (0..=(d - r))
            .map(|beta| (2.0 * eta).powi(beta as i32) * binom(d - r, beta))
            .sum();
        let coef = fact.powi(2 * (d - r) as i32) / PI.powi((d - r) as i32)
            * binom(d - d_m, r - d_m)
            * inner;
        x3 += coef * (g.g2(r)? + (irrational as f64 - 1.0) * g.g3(r)?);
        y2 += coef * g.g3(r)?;
    }
    Ok(XConstants {
        x1,
        x2,
        x2_single,
        x3,
        y2,
    })
}

/// Semi-empirical bound
/// `eps1 = b_max |M^-1|_1 |M_p - M|_e + 2 pi b_max |Delta V|_e`,
/// with the inverse norm taken from the explicitly inverted matrix.
pub fn epsilon1(sys: &CoefficientSystem, set: &ScaledExponentSet, b_max: f64) -> Result<f64> {
    let inv_norm = sys.inverse_norm1()?;
    let diff = sys.difference_norm();
    Ok(b_max * inv_norm * diff + 2.0 * PI * b_max * delta_v_norm(set))
}

/// Fully analytic bound
/// `eps2 = 2 pi b_max (D [1 + (zeta+1)(x2_single + y2)] x1 / (1 - x1 (x2 + x3)) + 1) |Delta V|_e`.
///
/// Vacuous (an error) when `x1 (x2 + x3) >= 1`; zero for rational-only input.
pub fn epsilon2(inputs: &BoundInputs, sharpened: bool) -> Result<f64> {
    if inputs.count == inputs.zeta {
        return Ok(0.0);
    }
    let xc = x_constants(inputs, sharpened)?;
    epsilon2_from_constants(inputs, &xc)
}

/// `eps2` from precomputed constants.
pub fn epsilon2_from_constants(inputs: &BoundInputs, xc: &XConstants) -> Result<f64> {
    if inputs.count == inputs.zeta {
        return Ok(0.0);
    }
    let contraction = xc.x1 * (xc.x2 + xc.x3);
    if contraction >= 1.0 {
        return Err(Error::Inadmissible(format!(
            "x1 (x2 + x3) = {contraction:.6} >= 1; the analytic bound does not apply"
        )));
    }
    let coupling = 1.0 + (inputs.zeta as f64 + 1.0) * (xc.x2_single + xc.y2);
    let amplification = inputs.count as f64 * coupling * xc.x1 / (1.0 - contraction) + 1.0;
    Ok(2.0 * PI * inputs.b_max * amplification * inputs.delta_v_e)
}

/// Admissibility verdicts for a period/grid choice.
#[derive(Debug, Clone)]
pub struct Admissibility {
    /// The full condition, with the free budgets split equally.
    pub full: bool,
    /// The weakened condition used by the worked examples.
    pub weak: bool,
    pub details: Vec<String>,
}

/// Checks both admissibility conditions.
///
/// Weak: `L_min C_a / span^(2+tau) - 1/2 - eta > max{1, ((eta!)^2/pi)^(1/(2eta+1))}`
/// and `G_min - 2 L_max |P|_1 N - 1/2 > eta`. For `eta = 1` this reduces to
/// `L_min > (5/2) span^(2+tau) / C_a` and `G_min > 2 L_max |P|_1 N + 3/2`.
///
/// Full: the two displayed inequalities of the admissibility assumption, with
/// the free parameters `(eps, eps_r)` defaulted so that every term of the
/// nonsingularity budget receives an equal share.
pub fn check_admissibility(inputs: &BoundInputs) -> Admissibility {
    let d = inputs.dim;
    let eta = inputs.eta as f64;
    let fact = inputs.factorial();
    let mut details = Vec::new();
    let irrational = inputs.count - inputs.zeta;
    if irrational == 0 {
        details.push("no irrational exponents: conditions hold vacuously".into());
        return Admissibility {
            full: true,
            weak: true,
            details,
        };
    }

    let sep = inputs.separation_margin();
    let weak_floor = 1.0f64.max((fact * fact / PI).powf(1.0 / (2.0 * eta + 1.0)));
    let weak_l = sep > weak_floor;
    // G_min - 2 L_max |P|_1 N - 1/2 > eta, i.e. a positive alias margin
    let weak_g = inputs.alias_margin() > 0.0;
    details.push(format!(
        "weak period condition: margin {sep:.4} vs floor {weak_floor:.4} -> {}",
        if weak_l { "ok" } else { "violated" }
    ));
    details.push(format!(
        "weak grid condition: G_min - 2 L_max |P|_1 N - 1/2 - eta = {:.4} -> {}",
        inputs.alias_margin(),
        if weak_g { "ok" } else { "violated" }
    ));
    let weak = weak_l && weak_g;

    // Equal-share defaults for the free budgets.
    let d_cap = inputs.d_max_coincide;
    let budget = (3.0 * PI / 5.0).powi(d as i32) * (0.5 + eta).powf(-2.0 * eta * d as f64);
    let slots = (d + 1) as f64;
    let eps_free = if irrational > 1 {
        budget / (slots * (irrational as f64 - 1.0))
    } else {
        f64::INFINITY
    };
    let span_pow = (inputs.lattice_span as f64).powf(2.0 + inputs.tau);
    let l_threshold = {
        let extra = if eps_free.is_finite() && d > d_cap {
            (PI.powi(d_cap as i32) / eps_free).powf(1.0 / ((2.0 * eta + 1.0) * (d - d_cap) as f64))
        } else {
            0.0
        };
        span_pow / inputs.c_a * (eta + 0.5 + weak_floor.max(extra).max(1.0))
    };
    let full_l = (inputs.l_min as f64) > l_threshold;
    details.push(format!(
        "full period condition: L_min = {} vs threshold {l_threshold:.4} -> {}",
        inputs.l_min,
        if full_l { "ok" } else { "violated" }
    ));

    let mut g_threshold = 0.0f64;
    for r in 0..d {
        let eps_r =
            budget * fact.powi(2 * r as i32) / (slots * irrational as f64 * PI.powi(r as i32));
        let inner: f64 = (0..=(d - r))
            .map(|beta| (2.0 * eta).powi(beta as i32) * binom(d - r, beta))
            .sum();
        let term = 2.0 * inputs.l_max as f64 * inputs.projection_norm1 * inputs.cutoff as f64
            + eta
            + 0.5
            + ((binom(d, r) * inner / eps_r).powf(1.0 / (d - r) as f64) / eta)
                .powf(1.0 / (2.0 * eta + 1.0));
        g_threshold = g_threshold.max(term);
    }
    let full_g = (inputs.g_min as f64) > g_threshold;
    details.push(format!(
        "full grid condition: G_min = {} vs threshold {g_threshold:.4} -> {}",
        inputs.g_min,
        if full_g { "ok" } else { "violated" }
    ));

    Admissibility {
        full: full_l && full_g,
        weak,
        details,
    }
}

/// Truncation-error scale `N^(kappa - alpha) |f|_alpha`.
///
/// Proportional scale only; the hidden constant of the regularity estimate is
/// not tracked. Requires `alpha > kappa > 0` (and `kappa > d/2` for the
/// estimate to mean anything, which is the caller's obligation).
pub fn truncation_bound(cutoff: i64, alpha: f64, kappa: f64, seminorm: f64) -> Result<f64> {
    if !(alpha > kappa && kappa > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need alpha > kappa > 0, got alpha = {alpha}, kappa = {kappa}"
        )));
    }
    if seminorm < 0.0 {
        return Err(Error::InvalidParameter(
            "seminorm must be nonnegative".into(),
        ));
    }
    Ok((cutoff as f64).powf(kappa - alpha) * seminorm)
}
