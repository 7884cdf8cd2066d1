//! Hanning window weights of order `eta`, the continuous normalized windowed
//! Fourier transform (closed form), and windowed-DFT entries.
//!
//! The window of order `eta` is `w(x) = c (1 - cos(2 pi x / L))^eta` with
//! `c = eta! / (2 eta - 1)!!`, chosen so that the window mean over one period
//! is exactly 1. Its Fourier expansion is
//! `w = sum_{|q| <= eta} c_q exp(i q theta)` with
//! `c_q = (-1)^q c C(2 eta, eta + q) / 2^eta` and `c_0 = 1`.
//!
//! Discrete transforms sum over the `G` sample nodes of the fundamental
//! domain, `x_j = j L / G` for `j = 0 .. G-1`. On these nodes the discrete
//! transform of a pure exponential equals the continuous transform plus its
//! alias images at shifts of `G` (see [`aliasing_check`]), which is the
//! identity the error analysis rests on. For integer frequency differences
//! the node range `0 .. G-1` gives the same value as the symmetric index set
//! `K_G`.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::types::PeriodGrid;

/// Below this distance to an integer the transform argument is treated as
/// integral and handled through the exact window coefficients.
const NWFT_INT_EPS: f64 = 1e-11;

/// Compensated (Kahan) accumulator.
#[derive(Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    #[inline]
    fn add(&mut self, value: f64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    fn value(&self) -> f64 {
        self.sum
    }
}

/// Hanning window of order `eta`: normalization constant and Fourier
/// coefficients, both computed in exact integer arithmetic.
#[derive(Debug, Clone)]
pub struct WindowKernel {
    eta: u32,
    norm_const: f64,
    /// `coeffs[(q + eta) as usize] = c_q` for `|q| <= eta`.
    coeffs: Vec<f64>,
}

impl WindowKernel {
    pub fn new(eta: u32) -> Result<Self> {
        if eta < 1 {
            return Err(Error::InvalidParameter(
                "window order eta must be at least 1".into(),
            ));
        }
        if eta > 16 {
            return Err(Error::InvalidParameter(format!(
                "window order {eta} exceeds the supported maximum of 16"
            )));
        }
        let e = eta as u128;
        let fact: u128 = (1..=e).product::<u128>().max(1);
        let double_fact: u128 = (1..=2 * e).filter(|k| k % 2 == 1).product::<u128>().max(1);
        let norm_const = fact as f64 / double_fact as f64;
        let mut coeffs = Vec::with_capacity(2 * eta as usize + 1);
        for q in -(eta as i64)..=eta as i64 {
            // c_q = (-1)^q * eta!/(2eta-1)!! * C(2eta, eta+q) / 2^eta, exactly.
            let binom = binomial(2 * e, (eta as i64 + q) as u128);
            let num = fact * binom;
            let den = double_fact << e;
            let sign = if q.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            coeffs.push(sign * rational_to_f64(num, den));
        }
        Ok(Self {
            eta,
            norm_const,
            coeffs,
        })
    }

    pub fn order(&self) -> u32 {
        self.eta
    }

    /// `eta! / (2 eta - 1)!!`
    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    /// Window Fourier coefficient `c_q`; zero for `|q| > eta`.
    pub fn fourier_coeff(&self, q: i64) -> f64 {
        let idx = q + self.eta as i64;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            0.0
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// One-dimensional weight at node index `j` of a `g`-point grid.
    #[inline]
    pub fn weight_1d(&self, j: i64, g: i64) -> f64 {
        let c = (TAU * j as f64 / g as f64).cos();
        self.norm_const * (1.0 - c).powi(self.eta as i32)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Reduce an exact integer ratio to f64 after cancelling the gcd.
fn rational_to_f64(mut num: u128, mut den: u128) -> f64 {
    let g = gcd(num, den);
    num /= g;
    den /= g;
    num as f64 / den as f64
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Multidimensional window weight at index `j`; zero outside `K_G`.
pub fn window_weight(kernel: &WindowKernel, j: &[i64], nodes: &[i64]) -> f64 {
    debug_assert_eq!(j.len(), nodes.len());
    let inside = j
        .iter()
        .zip(nodes)
        .all(|(&jl, &gl)| jl >= -gl / 2 && jl < gl / 2);
    if !inside {
        return 0.0;
    }
    j.iter()
        .zip(nodes)
        .map(|(&jl, &gl)| kernel.weight_1d(jl, gl))
        .product()
}

/// Mean of the discrete window over the full grid, `(1/|G|) sum_j H(j)`.
///
/// Equals 1 up to roundoff whenever every `G_j > 2 eta`, because all harmonic
/// sums of order `<= eta` vanish over a full period.
pub fn discrete_window_sum(kernel: &WindowKernel, nodes: &[i64]) -> Result<f64> {
    let mut total = 1.0;
    for &g in nodes {
        if g <= 2 * kernel.order() as i64 {
            return Err(Error::InvalidGrid(format!(
                "node count {g} must exceed 2 eta = {}",
                2 * kernel.order()
            )));
        }
        let mut acc = Compensated::default();
        for m in 0..g {
            acc.add(kernel.weight_1d(m, g));
        }
        total *= acc.value() / g as f64;
    }
    Ok(total)
}

/// Continuous normalized windowed transform of a pure exponential, evaluated
/// per dimension on the scaled difference `delta_j = v_j - w_j`:
///
/// * `1` when `delta_j = 0`,
/// * the window coefficient `c_{-q}` when `delta_j = q` is a nonzero integer
///   with `|q| <= eta`, `0` for integers beyond `eta`,
/// * otherwise the closed form
///   `(-1)^eta (eta!)^2 (e^{i 2 pi delta} - 1) / (i 2 pi prod_{j1=-eta}^{eta} (delta + j1))`.
///
/// All removable singularities are covered by the integer branch.
pub fn nwft_exponential(kernel: &WindowKernel, v: &[f64], w: &[f64]) -> Complex64 {
    debug_assert_eq!(v.len(), w.len());
    let mut out = Complex64::new(1.0, 0.0);
    for (&vj, &wj) in v.iter().zip(w) {
        out *= nwft_factor(kernel, vj - wj);
        if out.norm_sqr() == 0.0 {
            break;
        }
    }
    out
}

fn nwft_factor(kernel: &WindowKernel, delta: f64) -> Complex64 {
    let eta = kernel.order() as i64;
    let nearest = delta.round();
    if (delta - nearest).abs() < NWFT_INT_EPS {
        let q = nearest as i64;
        return if q == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(kernel.fourier_coeff(-q), 0.0)
        };
    }
    // e^{i 2 pi delta} evaluated on the reduced argument for full precision.
    let frac = delta - nearest;
    let num_exp = Complex64::cis(TAU * frac) - Complex64::new(1.0, 0.0);
    let fact = factorial_f64(eta as u32);
    let sign = if eta % 2 == 0 { 1.0 } else { -1.0 };
    let mut den_prod = 1.0;
    for j1 in -eta..=eta {
        den_prod *= delta + j1 as f64;
    }
    let num = num_exp * (sign * fact * fact);
    let den = Complex64::new(0.0, TAU * den_prod);
    num / den
}

fn factorial_f64(n: u32) -> f64 {
    (1..=n as u64).product::<u64>().max(1) as f64
}

/// One-dimensional windowed-DFT factor
/// `(1/G) sum_{m=0}^{G-1} c (1 - cos(2 pi m / G))^eta e^{i 2 pi delta m / G}`.
///
/// Exactly-integer `delta` is resolved through the window coefficients
/// (`c_q` survives iff `q + delta` is divisible by `G`), which keeps the
/// periodic matrix bit-exact. The general path accumulates with compensated
/// summation; phases are reduced modulo `G` before the trig call so large
/// `delta * m` products lose no accuracy.
pub fn dft_entry_1d(kernel: &WindowKernel, delta: f64, g: i64) -> Complex64 {
    if delta.round() == delta && delta.abs() < 9.0e15 {
        let eta = kernel.order() as i64;
        let dmod = (delta as i128).rem_euclid(g as i128);
        let mut val = 0.0;
        for q in -eta..=eta {
            if (dmod + q as i128).rem_euclid(g as i128) == 0 {
                val += kernel.fourier_coeff(q);
            }
        }
        return Complex64::new(val, 0.0);
    }
    let mut re = Compensated::default();
    let mut im = Compensated::default();
    let gf = g as f64;
    for m in 0..g {
        let w = kernel.weight_1d(m, g);
        let u = (delta * m as f64).rem_euclid(gf);
        let ang = TAU * u / gf;
        re.add(w * ang.cos());
        im.add(w * ang.sin());
    }
    Complex64::new(re.value() / gf, im.value() / gf)
}

/// Windowed-DFT entry
/// `(1/|G|) sum_j H(j) e^{i 2 pi (vt - hs) . j / G}`,
/// evaluated as the product of one-dimensional sums (the window and the
/// exponential both factor per dimension, so the separable form is exact).
pub fn dft_entry(
    kernel: &WindowKernel,
    vt: &[f64],
    hs: &[i64],
    grid: &PeriodGrid,
) -> Result<Complex64> {
    if !grid.contains_index(hs) {
        return Err(Error::GridTooSmall {
            exponent: hs.to_vec(),
            nodes: grid.nodes().to_vec(),
        });
    }
    let mut out = Complex64::new(1.0, 0.0);
    for ((&v, &h), &g) in vt.iter().zip(hs).zip(grid.nodes()) {
        out *= dft_entry_1d(kernel, v - h as f64, g);
    }
    Ok(out)
}

/// Reference evaluation of [`dft_entry`] as one sum over the full grid.
/// O(prod G_j); used as the oracle the separable fast path is checked against.
pub fn dft_entry_full_grid(
    kernel: &WindowKernel,
    vt: &[f64],
    hs: &[i64],
    grid: &PeriodGrid,
) -> Result<Complex64> {
    if !grid.contains_index(hs) {
        return Err(Error::GridTooSmall {
            exponent: hs.to_vec(),
            nodes: grid.nodes().to_vec(),
        });
    }
    let d = grid.dim();
    let nodes = grid.nodes();
    let mut idx = vec![0i64; d];
    let mut re = Compensated::default();
    let mut im = Compensated::default();
    let total: i64 = nodes.iter().product();
    loop {
        let mut w = 1.0;
        let mut frac = 0.0;
        for j in 0..d {
            w *= kernel.weight_1d(idx[j], nodes[j]);
            let delta = vt[j] - hs[j] as f64;
            frac += (delta * idx[j] as f64).rem_euclid(nodes[j] as f64) / nodes[j] as f64;
        }
        let ang = TAU * (frac - frac.floor());
        re.add(w * ang.cos());
        im.add(w * ang.sin());
        // odometer increment
        let mut j = d;
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < nodes[j] {
                break;
            }
            idx[j] = 0;
            if j == 0 {
                let scale = total as f64;
                return Ok(Complex64::new(re.value() / scale, im.value() / scale));
            }
        }
    }
}

/// Residual of the alias expansion truncated at `|l|_inf <= n_alias`:
/// `| dft_entry - sum_{|l| <= n_alias} nwft(vt, hs + l o G) |`.
///
/// The discrete transform equals the full alias series, so the residual decays
/// to roundoff as `n_alias` grows; this is the diagnostic used in tests.
pub fn aliasing_check(
    kernel: &WindowKernel,
    vt: &[f64],
    hs: &[i64],
    grid: &PeriodGrid,
    n_alias: u32,
) -> Result<f64> {
    if n_alias < 1 {
        return Err(Error::InvalidParameter("n_alias must be at least 1".into()));
    }
    let discrete = dft_entry(kernel, vt, hs, grid)?;
    let d = grid.dim();
    let n = n_alias as i64;
    let mut shift = vec![-n; d];
    let mut series = Complex64::new(0.0, 0.0);
    'outer: loop {
        let w: Vec<f64> = hs
            .iter()
            .zip(&shift)
            .zip(grid.nodes())
            .map(|((&h, &l), &g)| (h + l * g) as f64)
            .collect();
        series += nwft_exponential(kernel, vt, &w);
        let mut j = d;
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            shift[j] += 1;
            if shift[j] <= n {
                break;
            }
            shift[j] = -n;
            if j == 0 {
                break 'outer;
            }
        }
    }
    Ok((discrete - series).norm())
}
