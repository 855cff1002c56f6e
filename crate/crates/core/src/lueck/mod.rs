//! Normalized Betti numbers along towers and heat-trace estimates of their
//! limits.
//!
//! Volume is the covering degree throughout: a level of degree `n` with
//! `b_k = b` contributes the exact rational `b / n`.

pub mod plateau;
pub mod spectrum;
pub mod stochastic;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::ComplexError;
use crate::cover::CoverTower;

pub use plateau::{
    heat_trace_series, l2_betti_plateau, log_grid, plateau_from_series, HeatTraceSeries, PlateauEstimate, SeriesLevel,
    TraceMode,
};
pub use spectrum::{exact_cap, heat_trace_exact, Spectrum, DEFAULT_EXACT_CAP};
pub use stochastic::{heat_trace_stochastic, StochasticTrace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LueckError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("matrix of dimension {dim} exceeds the exact-mode cap {cap}")]
    TooLargeForExact { dim: usize, cap: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("need at least 2 probes, got {0}")]
    InvalidProbeCount(usize),
    #[error("t-grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("tower has no levels")]
    EmptyTower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converging,
    Diverging,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelBetti {
    pub degree: usize,
    pub betti: usize,
    #[serde(serialize_with = "crate::io::report::ratio_as_string")]
    pub normalized: Ratio<i64>,
    pub connected: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub k: usize,
    pub levels: Vec<LevelBetti>,
    /// `(b_last - b_prev) / (n_last - n_prev)`, the value of the line
    /// `b = L n + c` through the last two levels; equals the last
    /// normalized value when fewer than two distinct degrees exist.
    #[serde(serialize_with = "crate::io::report::ratio_as_string")]
    pub fitted_limit: Ratio<i64>,
    /// Successive differences of normalized values.
    #[serde(serialize_with = "crate::io::report::ratios_as_strings")]
    pub deviations: Vec<Ratio<i64>>,
    pub verdict: Verdict,
    /// Tail of normalized values supporting the verdict.
    #[serde(serialize_with = "crate::io::report::ratios_as_strings")]
    pub witness_tail: Vec<Ratio<i64>>,
}

pub fn normalized_betti_sequence(tower: &CoverTower, k: usize) -> Result<ConvergenceReport, LueckError> {
    if k > tower.base.dim() {
        return Err(ComplexError::DegreeOutOfRange {
            k,
            dim: tower.base.dim(),
        }
        .into());
    }
    let levels: Vec<LevelBetti> = tower
        .levels
        .par_iter()
        .map(|l| {
            let betti = l.cover.complex.betti_number(k)?;
            Ok(LevelBetti {
                degree: l.degree,
                betti,
                normalized: Ratio::new(betti as i64, l.degree as i64),
                connected: l.is_connected,
            })
        })
        .collect::<Result<_, ComplexError>>()?;
    Ok(report_from_levels(k, levels))
}

pub(crate) fn report_from_levels(k: usize, levels: Vec<LevelBetti>) -> ConvergenceReport {
    let values: Vec<Ratio<i64>> = levels.iter().map(|l| l.normalized).collect();
    let deviations: Vec<Ratio<i64>> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let fitted_limit = match levels.as_slice() {
        [.., a, b] if a.degree != b.degree => {
            Ratio::new(b.betti as i64 - a.betti as i64, b.degree as i64 - a.degree as i64)
        }
        [.., last] => last.normalized,
        [] => Ratio::zero(),
    };
    let verdict = match deviations.as_slice() {
        [.., a, b] => {
            if b.abs() <= a.abs() {
                Verdict::Converging
            } else {
                Verdict::Diverging
            }
        }
        _ => Verdict::Inconclusive,
    };
    let witness_tail = values[values.len().saturating_sub(3)..].to_vec();
    ConvergenceReport {
        k,
        levels,
        fitted_limit,
        deviations,
        verdict,
        witness_tail,
    }
}
