//! Exact rooted-ball distributions and their total-variation distance.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::canon::{canonical_ball_code, RootedBallCode};
use super::{Graph, LocalError};
use crate::io::report::{fmt_ratio, parse_ratio};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallStatistics {
    pub r: usize,
    pub sample_size: usize,
    #[serde(serialize_with = "ser_hist", deserialize_with = "de_hist")]
    pub histogram: BTreeMap<RootedBallCode, Ratio<i64>>,
}

fn ser_hist<S: Serializer>(h: &BTreeMap<RootedBallCode, Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(h.iter().map(|(k, v)| (k.to_string(), fmt_ratio(v))))
}

fn de_hist<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<RootedBallCode, Ratio<i64>>, D::Error> {
    let raw = BTreeMap::<String, String>::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| {
            let code = hex::decode(&k).map_err(serde::de::Error::custom)?;
            let freq = parse_ratio(&v).ok_or_else(|| serde::de::Error::custom(format!("bad frequency {v}")))?;
            Ok((RootedBallCode(code), freq))
        })
        .collect()
}

impl BallStatistics {
    pub fn total(&self) -> Ratio<i64> {
        self.histogram.values().sum()
    }
}

/// Distribution of canonical `r`-ball types, rooted at every vertex.
pub fn ball_census(g: &Graph, r: usize) -> BallStatistics {
    let n = g.num_vertices();
    let codes: Vec<RootedBallCode> = (0..n)
        .into_par_iter()
        .map(|v| {
            let (ball, dist) = g.ball(v, r);
            canonical_ball_code(&ball, &dist)
        })
        .collect();
    let mut counts: BTreeMap<RootedBallCode, i64> = BTreeMap::new();
    for c in codes {
        *counts.entry(c).or_insert(0) += 1;
    }
    BallStatistics {
        r,
        sample_size: n,
        histogram: counts.into_iter().map(|(c, k)| (c, Ratio::new(k, n as i64))).collect(),
    }
}

/// Half the `l1` distance between the two histograms.
pub fn tv_distance(a: &BallStatistics, b: &BallStatistics) -> Result<Ratio<i64>, LocalError> {
    if a.r != b.r {
        return Err(LocalError::RadiusMismatch(a.r, b.r));
    }
    let mut sum = Ratio::zero();
    for (code, p) in &a.histogram {
        sum += (p - b.histogram.get(code).copied().unwrap_or_else(Ratio::zero)).abs();
    }
    for (code, q) in &b.histogram {
        if !a.histogram.contains_key(code) {
            sum += q;
        }
    }
    Ok(sum / 2)
}
