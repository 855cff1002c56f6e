//! Heat kernel of the hyperbolic plane by quadrature of its integral
//! representation, and the Gaussian-bound constant over a `t`-window.
//!
//! `p_t(r) = sqrt(2) e^{-t/4} (4 pi t)^{-3/2} int_r^inf s e^{-s^2/4t} (cosh s - cosh r)^{-1/2} ds`
//!
//! With `s = r + u^2` the endpoint singularity disappears. The factor
//! `e^{-r^2/4t - r/2}` is pulled out analytically so values stay positive
//! long after they would underflow as a product.

use rayon::prelude::*;
use serde::Serialize;

use super::quad::integrate;
use super::HypError;

pub const DEFAULT_T_MAX: f64 = 10.0;
/// Relative accuracy requested from the quadrature.
pub const KERNEL_REL_TOL: f64 = 1e-11;
/// Tail cut: the integrand is below `e^{-TAIL_EXPONENT}` of its peak beyond.
const TAIL_EXPONENT: f64 = 60.0;

/// `sinh(x) / x`, accurate near zero.
fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

/// Natural log of `p_t(r)`, without window checks.
pub fn log_heat_kernel(r: f64, t: f64) -> f64 {
    let r = r.max(0.0);
    // (s^2 - r^2) / 4t <= TAIL_EXPONENT at the upper limit
    let s_max = (r * r + 4.0 * TAIL_EXPONENT * t).sqrt();
    let u_max = (s_max - r).sqrt();
    let integrand = |u: f64| {
        let u2 = u * u;
        let s = r + u2;
        let gauss = (-(2.0 * r * u2 + u2 * u2) / (4.0 * t) - u2 / 4.0).exp();
        let denom = (-(-2.0 * r - u2).exp_m1() * sinhc(u2 / 2.0)).sqrt();
        2.0 * std::f64::consts::SQRT_2 * s * gauss / denom
    };
    let q = integrate(integrand, 0.0, u_max, KERNEL_REL_TOL, 0.0);
    let pi = std::f64::consts::PI;
    0.5 * 2f64.ln() - t / 4.0 - 1.5 * (4.0 * pi * t).ln() - r * r / (4.0 * t) - r / 2.0 + q.value.ln()
}

/// `p_t(r)` with `t` restricted to `(0, m]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeatKernel {
    pub m: f64,
}

impl Default for HeatKernel {
    fn default() -> Self {
        Self { m: DEFAULT_T_MAX }
    }
}

impl HeatKernel {
    pub fn new(m: f64) -> Result<Self, HypError> {
        if !(m.is_finite() && m > 0.0) {
            return Err(HypError::WindowEmpty(format!("m = {m}")));
        }
        Ok(Self { m })
    }

    pub fn check(&self, t: f64) -> Result<(), HypError> {
        if t > 0.0 && t <= self.m {
            Ok(())
        } else {
            Err(HypError::TOutOfWindow { t, m: self.m })
        }
    }

    pub fn eval(&self, dist: f64, t: f64) -> Result<f64, HypError> {
        self.check(t)?;
        Ok(log_heat_kernel(dist, t).exp())
    }
}

/// `p_t(dist)` in the default window.
pub fn h2_heat_kernel(dist: f64, t: f64) -> Result<f64, HypError> {
    HeatKernel::default().eval(dist, t)
}

/// Smallest `c` with `c e^{-d^2/c} >= p`; the left side increases with `c`.
pub fn required_gaussian_constant(p: f64, d: f64) -> f64 {
    let holds = |c: f64| c * (-d * d / c).exp() >= p;
    let mut lo = 0.0;
    let mut hi = p.max(1e-300);
    while !holds(hi) {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussianFit {
    pub c1: f64,
    pub t_min: f64,
    pub m: f64,
    pub d_max: f64,
    pub t_grid: Vec<f64>,
    pub d_grid: Vec<f64>,
    /// Point where the fitted constant is attained.
    pub argmax: (f64, f64),
}

impl GaussianFit {
    /// Grid points `(d, t)` where `p_t(d) > c1 e^{-d^2/c1}`.
    pub fn violations(&self, t_grid: &[f64], d_grid: &[f64]) -> Vec<(f64, f64)> {
        let c1 = self.c1;
        t_grid
            .par_iter()
            .flat_map_iter(|&t| {
                d_grid.iter().filter_map(move |&d| {
                    let p = log_heat_kernel(d, t).exp();
                    (p > c1 * (-d * d / c1).exp()).then_some((d, t))
                })
            })
            .collect()
    }

    /// Grid with `factor` times as many points per axis over the same ranges.
    pub fn denser_grids(&self, factor: usize) -> (Vec<f64>, Vec<f64>) {
        (
            linspace(self.t_min, self.m, (self.t_grid.len() - 1) * factor + 1),
            linspace(0.0, self.d_max, (self.d_grid.len() - 1) * factor + 1),
        )
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

pub const DEFAULT_T_MIN: f64 = 0.05;
pub const DEFAULT_D_MAX: f64 = 20.0;

/// Golden-section maximization of a unimodal-looking `f` on `[a, b]`.
fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            a = x1;
            (x1, f1) = (x2, f2);
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            (x2, f2) = (x1, f1);
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Fits the constant of `p_t(d) <= c1 e^{-d^2/c1}` over `t in [t_min, m]`,
/// `d in [0, d_max]`: the maximum of the pointwise requirement on the grid,
/// polished by coordinate searches around the best grid points.
pub fn fit_gaussian_constant(t_min: f64, m: f64, d_max: f64, nt: usize, nd: usize) -> Result<GaussianFit, HypError> {
    if !(t_min > 0.0 && m >= t_min && d_max >= 0.0 && nt >= 2 && nd >= 2) {
        return Err(HypError::WindowEmpty(format!("t in [{t_min}, {m}], d in [0, {d_max}]")));
    }
    let t_grid = linspace(t_min, m, nt);
    let d_grid = linspace(0.0, d_max, nd);
    let need = |d: f64, t: f64| required_gaussian_constant(log_heat_kernel(d, t).exp(), d);
    let (tg, dg) = (&t_grid, &d_grid);
    let mut cells: Vec<(f64, usize, usize)> = (0..nt)
        .into_par_iter()
        .flat_map_iter(|i| (0..nd).map(move |j| (need(dg[j], tg[i]), i, j)))
        .collect();
    cells.sort_by(|a, b| b.0.total_cmp(&a.0));
    let (dt, dd) = (t_grid[1] - t_grid[0], d_grid[1] - d_grid[0]);
    let mut best = (cells[0].0, (d_grid[cells[0].2], t_grid[cells[0].1]));
    for &(_, i, j) in cells.iter().take(3) {
        let (mut d, mut t) = (d_grid[j], t_grid[i]);
        for _ in 0..4 {
            let (dn, _) = golden_max(|x| need(x, t), (d - dd).max(0.0), (d + dd).min(d_max));
            d = dn;
            let (tn, _) = golden_max(|x| need(d, x), (t - dt).max(t_min), (t + dt).min(m));
            t = tn;
        }
        // endpoints of the window are candidates the interior search never hits
        for (dc, tc) in [(d, t), (d, t_min), (d, m), (0.0, t)] {
            let c = need(dc, tc);
            if c > best.0 {
                best = (c, (dc, tc));
            }
        }
    }
    Ok(GaussianFit {
        c1: best.0,
        t_min,
        m,
        d_max,
        t_grid,
        d_grid,
        argmax: best.1,
    })
}
