//! Quotient heat kernels on the diagonal by summing over orbit images.
//!
//! Truncation at radius `R` discards the images with `d(x, g x) > R`. Orbit
//! points are `2 iota`-separated (`iota` the injectivity radius at `x`), so
//! disjoint `iota`-disks give `#{g : d(x, g x) <= r} <= (cosh(r + iota) - 1) / (cosh iota - 1)`.
//! With `p_t` decreasing, shells of width `h` bound the discarded sum by
//! `sum_j N(R + (j+1) h) p_t(R + j h)`.

use rayon::prelude::*;
use serde::Serialize;

use super::kernel::{log_heat_kernel, HeatKernel};
use super::orbit::{injectivity_radius, orbit_enumerate};
use super::surface::HyperbolicSurface;
use super::{HypError, Point};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ImagesConfig {
    pub kernel: HeatKernel,
    /// Candidate truncation radii are multiples of this step.
    pub radius_step: f64,
    /// Largest truncation radius the enumeration may use.
    pub max_radius: f64,
    /// Shell width in the tail bound.
    pub shell: f64,
}

impl Default for ImagesConfig {
    fn default() -> Self {
        Self {
            kernel: HeatKernel::default(),
            radius_step: 0.25,
            max_radius: 14.0,
            shell: 0.02,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelValue {
    pub t: f64,
    pub value: f64,
    pub truncation_bound: f64,
    pub images_used: usize,
    pub radius: f64,
    pub injrad: f64,
}

fn ln_orbit_count_bound(r: f64, iota: f64) -> f64 {
    // log of (cosh(r + iota) - 1) / (cosh(iota) - 1), stable for large r
    let num = if r + iota > 20.0 {
        r + iota - 2f64.ln()
    } else {
        ((r + iota).cosh() - 1.0).ln()
    };
    num - (iota.cosh() - 1.0).ln()
}

/// Tail bounds at the radii `j * shell`, `j = 0, 1, ..`: entry `j` bounds
/// the sum of `p_t(d(x, g x))` over images with `d > j * shell`. The list
/// runs until the bound is far below `floor`; past its end the last entry
/// still bounds the tail.
pub fn tail_bounds(t: f64, iota: f64, shell: f64, floor: f64) -> Vec<f64> {
    let term = |j: usize| {
        let r = j as f64 * shell;
        (ln_orbit_count_bound(r + shell, iota) + log_heat_kernel(r, t)).exp()
    };
    let mut terms = vec![term(0)];
    let remainder = loop {
        let j = terms.len();
        let cur = term(j);
        let q = if terms[j - 1] > 0.0 { cur / terms[j - 1] } else { 0.0 };
        terms.push(cur);
        // the log of the terms is eventually concave, so ratios only shrink
        if q < 0.5 && (cur <= 1e-6 * floor || cur < 1e-300) {
            break cur * q / (1.0 - q);
        }
    };
    let mut out = vec![0.0; terms.len()];
    let mut acc = remainder;
    for j in (0..terms.len()).rev() {
        acc += terms[j];
        out[j] = acc;
    }
    out
}

fn bound_at(bounds: &[f64], j: usize) -> f64 {
    bounds[j.min(bounds.len() - 1)]
}

/// Bound on the sum of `p_t(d(x, g x))` over images beyond `radius`.
pub fn tail_bound(radius: f64, t: f64, iota: f64, shell: f64) -> f64 {
    let bounds = tail_bounds(t, iota, shell, f64::MIN_POSITIVE);
    bound_at(&bounds, (radius / shell).floor() as usize)
}

/// Diagonal values at several times from one enumeration at the largest
/// radius any of them needs.
pub fn surface_heat_diagonals(
    s: &HyperbolicSurface,
    x: Point,
    ts: &[f64],
    eps: f64,
    cfg: &ImagesConfig,
) -> Result<Vec<KernelValue>, HypError> {
    for &t in ts {
        cfg.kernel.check(t)?;
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(HypError::TruncationUnreachable {
            target: eps,
            max_radius: cfg.max_radius,
        });
    }
    let iota = injectivity_radius(s, x)?;
    // radii are multiples of the shell width, so bounds can be read off
    let per_step = (cfg.radius_step / cfg.shell).round().max(1.0) as usize;
    let mut radius_index = 0;
    let mut bounds = Vec::with_capacity(ts.len());
    for &t in ts {
        let b = tail_bounds(t, iota, cfg.shell, eps);
        let j = (0..)
            .step_by(per_step)
            .find(|&j| bound_at(&b, j) <= eps)
            .expect("bounds end below eps");
        if j as f64 * cfg.shell > cfg.max_radius {
            return Err(HypError::TruncationUnreachable {
                target: eps,
                max_radius: cfg.max_radius,
            });
        }
        radius_index = radius_index.max(j);
        bounds.push(b);
    }
    let radius = radius_index as f64 * cfg.shell;
    let orbit = orbit_enumerate(s, x, x, radius)?;
    Ok(ts
        .iter()
        .zip(&bounds)
        .map(|(&t, b)| {
            // smallest terms first
            let value = orbit.iter().rev().map(|e| log_heat_kernel(e.distance, t).exp()).sum();
            KernelValue {
                t,
                value,
                truncation_bound: bound_at(b, radius_index),
                images_used: orbit.len(),
                radius,
                injrad: iota,
            }
        })
        .collect())
}

/// `sum_g p_t(d(x, g x))` with a certified bound on the discarded tail.
pub fn surface_heat_diagonal(
    s: &HyperbolicSurface,
    x: Point,
    t: f64,
    eps: f64,
    cfg: &ImagesConfig,
) -> Result<KernelValue, HypError> {
    Ok(surface_heat_diagonals(s, x, &[t], eps, cfg)?.remove(0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeviationRow {
    pub point: [f64; 2],
    pub injrad: f64,
    pub value: f64,
    pub truncation_bound: f64,
    /// `|K_t(x, x) - p_t(0)|`.
    pub deviation: f64,
    /// `deviation * injrad^2`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeviationTable {
    pub t: f64,
    pub rows: Vec<DeviationRow>,
    /// Largest ratio over the sample.
    pub empirical_c: f64,
}

impl DeviationTable {
    fn from_rows(t: f64, rows: Vec<DeviationRow>) -> Self {
        let empirical_c = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
        Self { t, rows, empirical_c }
    }

    /// Same table restricted to the `n` rows with largest injectivity radius.
    pub fn thickest(&self, n: usize) -> Self {
        let mut rows = self.rows.clone();
        rows.sort_by(|a, b| b.injrad.total_cmp(&a.injrad));
        rows.truncate(n);
        Self::from_rows(self.t, rows)
    }
}

/// One table per `t`, points evaluated in parallel.
pub fn deviation_vs_injrad(
    s: &HyperbolicSurface,
    points: &[Point],
    ts: &[f64],
    eps: f64,
    cfg: &ImagesConfig,
) -> Result<Vec<DeviationTable>, HypError> {
    let per_point: Vec<Vec<KernelValue>> = points
        .par_iter()
        .map(|&x| surface_heat_diagonals(s, x, ts, eps, cfg))
        .collect::<Result<_, _>>()?;
    Ok(ts
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let p0 = log_heat_kernel(0.0, t).exp();
            let rows = points
                .iter()
                .zip(&per_point)
                .map(|(x, vals)| {
                    let v = &vals[k];
                    let deviation = (v.value - p0).abs();
                    DeviationRow {
                        point: [x.re, x.im],
                        injrad: v.injrad,
                        value: v.value,
                        truncation_bound: v.truncation_bound,
                        deviation,
                        ratio: deviation * v.injrad * v.injrad,
                    }
                })
                .collect();
            DeviationTable::from_rows(t, rows)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceThinPart {
    pub r_grid: Vec<f64>,
    pub fractions: Vec<f64>,
    /// Binomial standard errors `sqrt(p (1 - p) / n)`.
    pub std_errors: Vec<f64>,
    pub samples: usize,
}

/// Monte-Carlo fraction of sample points whose injectivity radius is below
/// each `r`.
pub fn surface_thin_part(
    s: &HyperbolicSurface,
    r_grid: &[f64],
    samples: usize,
    seed: u64,
    max_offset: f64,
) -> Result<SurfaceThinPart, HypError> {
    let points = s.sample_points(samples, seed, max_offset);
    let radii: Vec<f64> = points
        .par_iter()
        .map(|&x| injectivity_radius(s, x))
        .collect::<Result<_, _>>()?;
    let n = samples.max(1) as f64;
    let fractions: Vec<f64> = r_grid
        .iter()
        .map(|&r| radii.iter().filter(|&&i| i < r).count() as f64 / n)
        .collect();
    let std_errors = fractions.iter().map(|p| (p * (1.0 - p) / n).sqrt()).collect();
    Ok(SurfaceThinPart {
        r_grid: r_grid.to_vec(),
        fractions,
        std_errors,
        samples,
    })
}
