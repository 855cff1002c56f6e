//! Graph injectivity radius and thin-part fractions.
//!
//! The injectivity radius at `v` is half the length of the shortest
//! non-backtracking closed walk at `v` that is nontrivial in the
//! fundamental group, i.e. the minimal displacement of `v` in the universal
//! cover. With a BFS tree rooted at `v` this is
//! `min (d(a) + d(b) + 1)` over non-tree edges `ab`. On a cycle through `v`
//! it is half that cycle's length; a vertex off every cycle sees the
//! shortest lollipop.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::Serialize;

use super::{Graph, LocalError};

/// Shortest nontrivial reduced closed walk at `v`, `None` when `v`'s
/// component is a tree.
pub fn shortest_loop_through(g: &Graph, v: usize) -> Option<usize> {
    let n = g.num_vertices();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    let mut best: Option<usize> = None;
    while let Some(a) = queue.pop_front() {
        // nothing found later can beat a loop already of length <= 2 d(a) + 1
        if best.is_some_and(|b| b <= 2 * dist[a] + 1) {
            break;
        }
        for &b in g.neighbors(a) {
            if dist[b] == usize::MAX {
                dist[b] = dist[a] + 1;
                parent[b] = a;
                queue.push_back(b);
            } else if parent[a] != b {
                let len = dist[a] + dist[b] + 1;
                best = Some(best.map_or(len, |x| x.min(len)));
            }
        }
    }
    best
}

/// Per-vertex injectivity radius, `None` standing for infinity.
pub fn injectivity_radius_profile(g: &Graph) -> Vec<Option<Ratio<i64>>> {
    use rayon::prelude::*;
    (0..g.num_vertices())
        .into_par_iter()
        .map(|v| shortest_loop_through(g, v).map(|l| Ratio::new(l as i64, 2)))
        .collect()
}

/// Fraction of vertices whose injectivity radius is below `r`.
pub fn thin_part_fraction(g: &Graph, r: Ratio<i64>) -> Result<Ratio<i64>, LocalError> {
    Ok(thin_part_profile(g, &[r])?.fractions[0])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThinPartProfile {
    #[serde(serialize_with = "crate::io::report::ratios_as_strings")]
    pub r_grid: Vec<Ratio<i64>>,
    #[serde(serialize_with = "crate::io::report::ratios_as_strings")]
    pub fractions: Vec<Ratio<i64>>,
}

pub fn thin_part_profile(g: &Graph, r_grid: &[Ratio<i64>]) -> Result<ThinPartProfile, LocalError> {
    if r_grid.iter().any(|r| *r <= Ratio::from_integer(0)) {
        return Err(LocalError::NonPositiveRadius);
    }
    let profile = injectivity_radius_profile(g);
    let n = g.num_vertices().max(1) as i64;
    let fractions = r_grid
        .iter()
        .map(|r| {
            let thin = profile.iter().filter(|x| x.is_some_and(|x| x < *r)).count();
            Ratio::new(thin as i64, n)
        })
        .collect();
    Ok(ThinPartProfile {
        r_grid: r_grid.to_vec(),
        fractions,
    })
}
