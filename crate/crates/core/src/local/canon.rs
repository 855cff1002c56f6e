//! Canonical codes of rooted balls.
//!
//! Trees get the nested-parenthesis encoding of the tree rooted at the
//! centre. Other balls go through colour refinement seeded with
//! `(distance, degree)`, then individualize-and-refine search; the code is
//! the least adjacency encoding over all leaves of the search tree. Twins
//! inside a cell are interchangeable, so only one of them is branched on.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Graph;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedBallCode(pub Vec<u8>);

impl fmt::Debug for RootedBallCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedBallCode({})", hex::encode(&self.0))
    }
}

impl fmt::Display for RootedBallCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(&self.0))
    }
}

impl Serialize for RootedBallCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&hex::encode(&self.0))
    }
}

impl<'de> Deserialize<'de> for RootedBallCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        hex::decode(&s).map(RootedBallCode).map_err(serde::de::Error::custom)
    }
}

/// Code of `ball` rooted at vertex 0; `dist` holds distances from the root.
pub fn canonical_ball_code(ball: &Graph, dist: &[usize]) -> RootedBallCode {
    let n = ball.num_vertices();
    if ball.num_edges() + 1 == n {
        let mut out = vec![b'T'];
        tree_code(ball, 0, usize::MAX, &mut out);
        return RootedBallCode(out);
    }
    let initial: Vec<(usize, usize)> = (0..n).map(|v| (dist[v], ball.neighbors(v).len())).collect();
    let colors = refine(ball, rank(&initial));
    let mut best: Option<Vec<u8>> = None;
    search(ball, colors, &mut best);
    let mut out = vec![b'G'];
    out.extend(best.expect("at least one leaf"));
    RootedBallCode(out)
}

fn tree_code(g: &Graph, v: usize, parent: usize, out: &mut Vec<u8>) {
    let mut children: Vec<Vec<u8>> = g
        .neighbors(v)
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| {
            let mut s = Vec::new();
            tree_code(g, c, v, &mut s);
            s
        })
        .collect();
    children.sort_unstable();
    out.push(b'(');
    for c in children {
        out.extend(c);
    }
    out.push(b')');
}

/// Dense ranks of `keys`, order-preserving.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present")).collect()
}

fn num_colors(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |m| m + 1)
}

/// Colour refinement to the coarsest equitable refinement.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    loop {
        let before = num_colors(&colors);
        let sigs: Vec<(usize, Vec<usize>)> = (0..g.num_vertices())
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                ns.sort_unstable();
                (colors[v], ns)
            })
            .collect();
        colors = rank(&sigs);
        if num_colors(&colors) == before {
            return colors;
        }
    }
}

fn leaf_code(g: &Graph, colors: &[usize]) -> Vec<u8> {
    let n = g.num_vertices();
    let mut order = vec![0; n];
    for (v, &c) in colors.iter().enumerate() {
        order[c] = v;
    }
    let mut out = (n as u32).to_le_bytes().to_vec();
    let (mut byte, mut bits) = (0u8, 0);
    for i in 0..n {
        for j in i + 1..n {
            byte = (byte << 1) | g.has_edge(order[i], order[j]) as u8;
            bits += 1;
            if bits == 8 {
                out.push(byte);
                (byte, bits) = (0, 0);
            }
        }
    }
    if bits > 0 {
        out.push(byte << (8 - bits));
    }
    out
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<Vec<u8>>) {
    let n = g.num_vertices();
    let k = num_colors(&colors);
    if k == n {
        let code = leaf_code(g, &colors);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let mut size = vec![0usize; k];
    for &c in &colors {
        size[c] += 1;
    }
    let target = (0..k).find(|&c| size[c] > 1).expect("non-discrete");
    let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
    let closed = |v: usize| {
        let mut s = g.neighbors(v).to_vec();
        s.push(v);
        s.sort_unstable();
        s
    };
    for (i, &v) in cell.iter().enumerate() {
        let twin = cell[..i]
            .iter()
            .any(|&u| g.neighbors(u) == g.neighbors(v) || closed(u) == closed(v));
        if twin {
            continue;
        }
        let keys: Vec<(usize, bool)> = (0..n).map(|u| (colors[u], u != v)).collect();
        search(g, refine(g, rank(&keys)), best);
    }
}
