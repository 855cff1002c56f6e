//! Heat-trace series along a tower and the plateau read-off.

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::CoverTower;

use super::spectrum::Spectrum;
use super::stochastic::heat_trace_stochastic;
use super::LueckError;

/// Slack allowed in the exact-mode monotonicity and domination checks.
pub const EXACT_TOLERANCE: f64 = 1e-10;
/// Relative agreement required between the last two levels.
pub const PLATEAU_TOLERANCE: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum TraceMode {
    Exact,
    Stochastic {
        probes: usize,
        poly_degree: Option<usize>,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesLevel {
    pub degree: usize,
    pub betti: usize,
    /// `(1/degree) tr exp(-t Delta_k)` on the grid.
    pub values: Vec<f64>,
    /// Normalized standard errors (zero in exact mode).
    pub errors: Vec<f64>,
    /// Normalized polynomial-approximation bias bounds (zero in exact mode).
    pub bias: Vec<f64>,
}

impl SeriesLevel {
    pub fn normalized_betti(&self) -> f64 {
        self.betti as f64 / self.degree as f64
    }

    fn slack(&self, i: usize) -> f64 {
        EXACT_TOLERANCE + 3.0 * self.errors[i] + self.bias[i]
    }

    /// Nonincreasing in `t` up to the error bars.
    pub fn is_monotone(&self) -> bool {
        (1..self.values.len()).all(|i| self.values[i] <= self.values[i - 1] + self.slack(i) + self.slack(i - 1))
    }

    /// Never below the normalized Betti number.
    pub fn dominates_betti(&self) -> bool {
        let nb = self.normalized_betti();
        (0..self.values.len()).all(|i| self.values[i] >= nb - self.slack(i))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeatTraceSeries {
    pub k: usize,
    pub t_grid: Vec<f64>,
    pub mode: TraceMode,
    pub levels: Vec<SeriesLevel>,
}

fn check_grid(t_grid: &[f64]) -> Result<(), LueckError> {
    if t_grid.len() < 2 {
        return Err(LueckError::GridTooCoarse(format!(
            "{} points, need at least 2",
            t_grid.len()
        )));
    }
    if t_grid.iter().any(|t| !(t.is_finite() && *t > 0.0)) || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LueckError::GridTooCoarse(
            "grid must be positive and strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Seed of level `i`, derived from the run seed by a splitmix step.
fn level_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn heat_trace_series(
    tower: &CoverTower,
    k: usize,
    t_grid: &[f64],
    mode: TraceMode,
) -> Result<HeatTraceSeries, LueckError> {
    if tower.levels.is_empty() {
        return Err(LueckError::EmptyTower);
    }
    check_grid(t_grid)?;
    let levels = tower
        .levels
        .par_iter()
        .enumerate()
        .map(|(i, level)| {
            let complex = &level.cover.complex;
            let lap = complex.hodge_laplacian(k)?;
            let betti = complex.betti_number(k)?;
            let deg = level.degree as f64;
            let (values, errors, bias) = match mode {
                TraceMode::Exact => {
                    let spec = Spectrum::of(&lap)?;
                    let v = t_grid.iter().map(|&t| spec.heat_trace(t) / deg).collect();
                    (v, vec![0.0; t_grid.len()], vec![0.0; t_grid.len()])
                }
                TraceMode::Stochastic {
                    probes,
                    poly_degree,
                    seed,
                } => {
                    let mut v = Vec::with_capacity(t_grid.len());
                    let mut e = Vec::with_capacity(t_grid.len());
                    let mut b = Vec::with_capacity(t_grid.len());
                    for &t in t_grid {
                        let r = heat_trace_stochastic(&lap, t, probes, poly_degree, level_seed(seed, i))?;
                        v.push(r.estimate / deg);
                        e.push(r.std_error / deg);
                        b.push(r.bias_bound / deg);
                    }
                    (v, e, b)
                }
            };
            Ok(SeriesLevel {
                degree: level.degree,
                betti,
                values,
                errors,
                bias,
            })
        })
        .collect::<Result<_, LueckError>>()?;
    Ok(HeatTraceSeries {
        k,
        t_grid: t_grid.to_vec(),
        mode,
        levels,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlateauEstimate {
    pub k: usize,
    pub value: f64,
    pub t_star: f64,
    pub relative_tolerance: f64,
    /// Last level's normalized trace at each `t`.
    pub across_level: Vec<f64>,
    /// Whether the last two levels agree within tolerance at each `t`.
    pub agreement: Vec<bool>,
    pub monotone: bool,
    /// Every level's normalized trace dominates its normalized Betti number.
    pub domination: bool,
    pub series: HeatTraceSeries,
}

/// Across-level value at the largest `t` where the last two levels differ
/// by less than `PLATEAU_TOLERANCE * (1 + value)`.
pub fn l2_betti_plateau(
    tower: &CoverTower,
    k: usize,
    t_grid: &[f64],
    mode: TraceMode,
) -> Result<PlateauEstimate, LueckError> {
    if tower.levels.len() < 2 {
        return Err(LueckError::GridTooCoarse(format!(
            "tower has {} level(s), need at least 2",
            tower.levels.len()
        )));
    }
    let series = heat_trace_series(tower, k, t_grid, mode)?;
    plateau_from_series(series)
}

pub fn plateau_from_series(series: HeatTraceSeries) -> Result<PlateauEstimate, LueckError> {
    let n = series.levels.len();
    if n < 2 {
        return Err(LueckError::GridTooCoarse("need at least 2 levels".into()));
    }
    let (prev, last) = (&series.levels[n - 2], &series.levels[n - 1]);
    let across_level = last.values.clone();
    let agreement: Vec<bool> = (0..series.t_grid.len())
        .map(|i| (last.values[i] - prev.values[i]).abs() < PLATEAU_TOLERANCE * (1.0 + last.values[i].abs()))
        .collect();
    let idx = agreement
        .iter()
        .rposition(|&a| a)
        .ok_or_else(|| LueckError::GridTooCoarse("last two levels never agree on the grid".into()))?;
    Ok(PlateauEstimate {
        k: series.k,
        value: across_level[idx],
        t_star: series.t_grid[idx],
        relative_tolerance: PLATEAU_TOLERANCE,
        monotone: series.levels.iter().all(SeriesLevel::is_monotone),
        domination: series.levels.iter().all(SeriesLevel::dominates_betti),
        across_level,
        agreement,
        series,
    })
}

/// `count` log-spaced points from `a` to `b` inclusive.
pub fn log_grid(a: f64, b: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..count)
        .map(|i| (la + (lb - la) * i as f64 / (count - 1) as f64).exp())
        .collect()
}
