//! L2-Betti numbers of the hyperbolic plane and space from their compact
//! duals, and the genus limit `b_1 / area -> 1 / (2 pi)`.
//!
//! Metrics are normalized to curvature `-1` (compact dual: `+1`).

use std::f64::consts::PI;

use num_rational::Ratio;
use serde::Serialize;

use super::HypError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualSpaceEntry {
    pub space: String,
    pub dim: usize,
    pub dual: String,
    pub dual_euler_characteristic: i64,
    pub dual_volume: f64,
    /// `beta_k` for `k = 0..=dim`.
    pub betti: Vec<f64>,
}

pub fn compact_dual_entry(space: &str) -> Result<DualSpaceEntry, HypError> {
    let (dim, dual, chi, vol) = match space.to_ascii_uppercase().as_str() {
        "H2" => (2, "S2", 2, 4.0 * PI),
        "H3" => (3, "S3", 0, 2.0 * PI * PI),
        _ => return Err(HypError::UnsupportedSpace(space.into())),
    };
    let betti = (0..=dim)
        .map(|k| if 2 * k == dim { chi as f64 / vol } else { 0.0 })
        .collect();
    Ok(DualSpaceEntry {
        space: space.to_ascii_uppercase(),
        dim,
        dual: dual.into(),
        dual_euler_characteristic: chi,
        dual_volume: vol,
        betti,
    })
}

/// `beta_k`; zero outside `0..=dim` as well.
pub fn compact_dual_l2_betti(space: &str, k: usize) -> Result<f64, HypError> {
    Ok(compact_dual_entry(space)?.betti.get(k).copied().unwrap_or(0.0))
}

/// Closed genus-`g` surface: `b_1 = 2g`, area `4 pi (g - 1)`. Ratios are
/// stored as multiples of `1/pi`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenusLimitRow {
    pub genus: i64,
    pub b1: i64,
    /// `area / pi`.
    #[serde(serialize_with = "crate::io::report::ratio_as_string")]
    pub area_over_pi: Ratio<i64>,
    /// `pi * b_1 / area`.
    #[serde(serialize_with = "crate::io::report::ratio_as_string")]
    pub ratio_times_pi: Ratio<i64>,
    /// `pi * (b_1 / area - 1/(2 pi))`.
    #[serde(serialize_with = "crate::io::report::ratio_as_string")]
    pub deviation_times_pi: Ratio<i64>,
}

pub fn genus_limit_check(genera: &[i64]) -> Result<Vec<GenusLimitRow>, HypError> {
    genera
        .iter()
        .map(|&g| {
            if g < 2 {
                return Err(HypError::InvalidSurface(format!("genus {g} < 2")));
            }
            let area_over_pi = Ratio::from_integer(4 * (g - 1));
            let ratio_times_pi = Ratio::from_integer(2 * g) / area_over_pi;
            Ok(GenusLimitRow {
                genus: g,
                b1: 2 * g,
                area_over_pi,
                ratio_times_pi,
                deviation_times_pi: ratio_times_pi - Ratio::new(1, 2),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog() {
        assert_eq!(compact_dual_l2_betti("H2", 0).unwrap(), 0.0);
        assert!((compact_dual_l2_betti("H2", 1).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        for k in 0..4 {
            assert_eq!(compact_dual_l2_betti("H3", k).unwrap(), 0.0);
        }
        assert!(matches!(
            compact_dual_l2_betti("H4", 2),
            Err(HypError::UnsupportedSpace(_))
        ));
    }

    #[test]
    fn genus_rows() {
        let rows = genus_limit_check(&[2, 101]).unwrap();
        assert_eq!(rows[0].ratio_times_pi, Ratio::from_integer(1));
        assert_eq!(rows[0].deviation_times_pi, Ratio::new(1, 2));
        assert_eq!(rows[1].ratio_times_pi, Ratio::new(202, 400));
        assert_eq!(rows[1].deviation_times_pi, Ratio::new(1, 200));
        assert!(genus_limit_check(&[1]).is_err());
    }
}
