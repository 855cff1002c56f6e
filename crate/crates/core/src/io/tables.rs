//! CSV views of module results.

use serde::Serialize;

use super::report::{fmt_float, fmt_ratio, Tabular};
use crate::complex::BettiVector;
use crate::hyperbolic::{DeviationTable, GenusLimitRow, SurfaceThinPart};
use crate::local::{BallStatistics, ThinPartProfile};
use crate::lueck::{ConvergenceReport, HeatTraceSeries, PlateauEstimate};

fn strings<const N: usize>(xs: [String; N]) -> Vec<String> {
    xs.to_vec()
}

impl Tabular for BettiVector {
    fn header(&self) -> Vec<String> {
        strings(["degree".into(), "betti".into()])
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.values
            .iter()
            .enumerate()
            .map(|(k, b)| vec![k.to_string(), b.to_string()])
            .collect()
    }
}

/// A single requested degree of a [`BettiVector`].
#[derive(Clone, Debug, Serialize)]
pub struct BettiRow {
    pub degree: usize,
    pub betti: usize,
}

impl Tabular for BettiRow {
    fn header(&self) -> Vec<String> {
        strings(["degree".into(), "betti".into()])
    }

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![self.degree.to_string(), self.betti.to_string()]]
    }
}

impl Tabular for ConvergenceReport {
    fn header(&self) -> Vec<String> {
        strings(["level".into(), "degree".into(), "normalized_betti".into()])
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.levels
            .iter()
            .enumerate()
            .map(|(i, l)| vec![i.to_string(), l.degree.to_string(), fmt_ratio(&l.normalized)])
            .collect()
    }
}

/// Exact normalized Betti numbers joined with the heat-trace series, one
/// row per level and one `trace@t` column per grid point.
#[derive(Clone, Debug, Serialize)]
pub struct LueckRun {
    pub convergence: ConvergenceReport,
    /// Carries its own series.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plateau: Option<PlateauEstimate>,
    /// Set only when no plateau was found on the grid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<HeatTraceSeries>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plateau_error: Option<String>,
}

impl LueckRun {
    fn series(&self) -> Option<&HeatTraceSeries> {
        self.plateau.as_ref().map(|p| &p.series).or(self.series.as_ref())
    }
}

impl Tabular for LueckRun {
    fn header(&self) -> Vec<String> {
        let mut h = self.convergence.header();
        if let Some(s) = self.series() {
            h.extend(s.t_grid.iter().map(|&t| format!("trace@{}", fmt_float(t))));
        }
        h
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = self.convergence.rows();
        if let Some(s) = self.series() {
            for (row, level) in rows.iter_mut().zip(&s.levels) {
                row.extend(level.values.iter().map(|&v| fmt_float(v)));
            }
        }
        rows
    }
}

impl Tabular for BallStatistics {
    fn header(&self) -> Vec<String> {
        strings(["code".into(), "probability".into()])
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.histogram
            .iter()
            .map(|(c, p)| vec![c.to_string(), fmt_ratio(p)])
            .collect()
    }
}

impl Tabular for ThinPartProfile {
    fn header(&self) -> Vec<String> {
        strings(["r".into(), "fraction".into()])
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.r_grid
            .iter()
            .zip(&self.fractions)
            .map(|(r, f)| vec![fmt_ratio(r), fmt_ratio(f)])
            .collect()
    }
}

impl Tabular for SurfaceThinPart {
    fn header(&self) -> Vec<String> {
        strings(["r".into(), "fraction".into(), "std_error".into()])
    }

    fn rows(&self) -> Vec<Vec<String>> {
        (0..self.r_grid.len())
            .map(|i| {
                vec![
                    fmt_float(self.r_grid[i]),
                    fmt_float(self.fractions[i]),
                    fmt_float(self.std_errors[i]),
                ]
            })
            .collect()
    }
}

impl Tabular for Vec<DeviationTable> {
    fn header(&self) -> Vec<String> {
        [
            "t",
            "x",
            "y",
            "injrad",
            "value",
            "truncation_bound",
            "deviation",
            "ratio",
        ]
        .map(String::from)
        .to_vec()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.iter()
            .flat_map(|tab| {
                tab.rows.iter().map(|r| {
                    [
                        tab.t,
                        r.point[0],
                        r.point[1],
                        r.injrad,
                        r.value,
                        r.truncation_bound,
                        r.deviation,
                        r.ratio,
                    ]
                    .map(fmt_float)
                    .to_vec()
                })
            })
            .collect()
    }
}

impl Tabular for Vec<GenusLimitRow> {
    fn header(&self) -> Vec<String> {
        ["genus", "b1", "area_over_pi", "ratio_times_pi", "deviation_times_pi"]
            .map(String::from)
            .to_vec()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.iter()
            .map(|r| {
                vec![
                    r.genus.to_string(),
                    r.b1.to_string(),
                    fmt_ratio(&r.area_over_pi),
                    fmt_ratio(&r.ratio_times_pi),
                    fmt_ratio(&r.deviation_times_pi),
                ]
            })
            .collect()
    }
}
