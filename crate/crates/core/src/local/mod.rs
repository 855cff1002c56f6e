//! Local statistics of graphs: rooted ball census, injectivity-radius
//! profiles and thin-part fractions.

pub mod canon;
pub mod census;
pub mod injrad;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;

pub use canon::{canonical_ball_code, RootedBallCode};
pub use census::{ball_census, tv_distance, BallStatistics};
pub use injrad::{injectivity_radius_profile, thin_part_fraction, thin_part_profile, ThinPartProfile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("radius mismatch: {0} vs {1}")]
    RadiusMismatch(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u64),
    #[error("radius must be positive")]
    NonPositiveRadius,
}

/// Finite simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list over arbitrary ids, relabelled in
    /// increasing order. Repeated edges collapse.
    pub fn from_edges<I>(edges: I) -> Result<(Self, Vec<u64>), LocalError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let edges: Vec<(u64, u64)> = edges.into_iter().collect();
        let labels: Vec<u64> = edges
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut g = Self::new(labels.len());
        for (u, v) in edges {
            if u == v {
                return Err(LocalError::SelfLoop(u));
            }
            g.add_edge(index[&u], index[&v]);
        }
        Ok((g, labels))
    }

    /// Adds an undirected edge; no-op if present.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop");
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
    }

    /// The 1-skeleton, vertices indexed by position in the sorted vertex list.
    pub fn one_skeleton(k: &SimplicialComplex) -> Self {
        let mut g = Self::new(k.num_cells(0));
        for e in k.edges() {
            let u = k.cell_index(&[e[0]]).expect("vertex");
            let v = k.cell_index(&[e[1]]).expect("vertex");
            g.add_edge(u, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn star(leaves: usize) -> Self {
        let mut g = Self::new(leaves + 1);
        for i in 1..=leaves {
            g.add_edge(0, i);
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Self::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// BFS distances from `root`, truncated at `radius` (`usize::MAX` beyond).
    pub fn distances(&self, root: usize, radius: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.adj.len()];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if dist[u] == radius {
                continue;
            }
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Closed `radius`-ball of the metric graph around `root`: vertices at
    /// distance `<= radius` and the edges with an endpoint at distance
    /// `< radius`. An edge joining two vertices on the boundary sphere is
    /// not contained in the ball. The root is vertex 0 and the second
    /// return value holds distances.
    pub fn ball(&self, root: usize, radius: usize) -> (Graph, Vec<usize>) {
        let mut order = vec![root];
        let mut dist_of = vec![0];
        let mut local: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            let d = dist_of[head];
            head += 1;
            if d == radius {
                continue;
            }
            for &v in &self.adj[u] {
                if let Entry::Vacant(e) = local.entry(v) {
                    e.insert(order.len());
                    order.push(v);
                    dist_of.push(d + 1);
                }
            }
        }
        let mut g = Graph::new(order.len());
        for (i, &u) in order.iter().enumerate() {
            for &v in &self.adj[u] {
                if let Some(&j) = local.get(&v) {
                    if i < j && dist_of[i].min(dist_of[j]) < radius {
                        g.add_edge(i, j);
                    }
                }
            }
        }
        (g, dist_of)
    }
}
