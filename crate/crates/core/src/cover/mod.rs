//! Finite covers of simplicial complexes from permutation representations
//! of the fundamental group of the 2-skeleton.
//!
//! A [`Presentation`] picks a BFS spanning tree of the 1-skeleton. Every edge
//! outside the tree is a generator and every triangle contributes one
//! relator. A [`PermutationRep`] assigns a permutation of the sheets
//! `0..degree` to each generator; walking along an edge `u -> v` (with
//! `u < v`) moves sheet `s` to `perm[s]`, tree edges keep the sheet.

pub mod free;
pub mod tower;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex, Vertex};

pub use free::{FreeQuotient, FreeWord};
pub use tower::{free_subgroup_chain_tower, normal_chain_tower, CoverTower, TowerFamily, TowerLevel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoverError {
    #[error("complex is disconnected")]
    Disconnected,
    #[error("relator {index} does not act as the identity")]
    RelatorViolated { index: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("generator {index} is not a bijection of 0..{degree}")]
    NotBijection { index: usize, degree: usize },
    #[error("unsupported tower family: {0}")]
    UnsupportedFamily(String),
    /// `degree` saturates at `u128::MAX`.
    #[error("a level of degree {} exceeds the cap {cap}", show_degree(*degree))]
    DegreeCap { degree: u128, cap: usize },
    #[error("no surjection onto the free group of rank 2: {0}")]
    NoFreeQuotient(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn show_degree(d: u128) -> String {
    if d == u128::MAX {
        "above 2^127".into()
    } else {
        d.to_string()
    }
}

/// One letter of a word in the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

pub type Word = Vec<Letter>;

/// Spanning-tree presentation of the fundamental group of the 2-skeleton.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// Generator index of each edge, `None` for tree edges.
    pub edge_generator: Vec<Option<usize>>,
    /// Edge index of each generator.
    pub generator_edges: Vec<usize>,
    /// One relator per triangle, in triangle order.
    pub relators: Vec<Word>,
    /// Tree parent of each vertex (by vertex index): `(parent index, edge index)`.
    pub tree_parent: Vec<Option<(usize, usize)>>,
    /// Vertex indices in BFS order, root first.
    pub bfs_order: Vec<usize>,
}

impl Presentation {
    pub fn num_generators(&self) -> usize {
        self.generator_edges.len()
    }

    /// Relators as signed generator counts (abelianization).
    pub fn relator_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|w| {
                let mut row = vec![0i64; self.num_generators()];
                for l in w {
                    row[l.generator] += if l.inverse { -1 } else { 1 };
                }
                row
            })
            .collect()
    }
}

/// Chooses a BFS spanning tree rooted at the smallest vertex and labels the
/// remaining edges as generators.
pub fn spanning_tree_generators(k: &SimplicialComplex) -> Result<Presentation, CoverError> {
    let nv = k.num_cells(0);
    let vidx: HashMap<Vertex, usize> = k.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (ei, e) in k.edges().iter().enumerate() {
        let (a, b) = (vidx[&e[0]], vidx[&e[1]]);
        incident[a].push((b, ei));
        incident[b].push((a, ei));
    }
    let mut tree_parent = vec![None; nv];
    let mut seen = vec![false; nv];
    let mut is_tree = vec![false; k.num_cells(1)];
    let mut bfs_order = Vec::with_capacity(nv);
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        bfs_order.push(v);
        for &(w, ei) in &incident[v] {
            if !seen[w] {
                seen[w] = true;
                tree_parent[w] = Some((v, ei));
                is_tree[ei] = true;
                queue.push_back(w);
            }
        }
    }
    if bfs_order.len() != nv {
        return Err(CoverError::Disconnected);
    }
    let mut edge_generator = vec![None; k.num_cells(1)];
    let mut generator_edges = Vec::new();
    for (ei, t) in is_tree.iter().enumerate() {
        if !t {
            edge_generator[ei] = Some(generator_edges.len());
            generator_edges.push(ei);
        }
    }
    let relators = k
        .cells(2)
        .iter()
        .map(|tri| {
            let e = |a, b| k.cell_index(&[a, b]).expect("face present");
            // loop v0 -> v1 -> v2 -> v0
            [
                (e(tri[0], tri[1]), false),
                (e(tri[1], tri[2]), false),
                (e(tri[0], tri[2]), true),
            ]
            .into_iter()
            .filter_map(|(ei, inverse)| edge_generator[ei].map(|generator| Letter { generator, inverse }))
            .collect()
        })
        .collect();
    Ok(Presentation {
        edge_generator,
        generator_edges,
        relators,
        tree_parent,
        bfs_order,
    })
}

/// Permutations of `0..degree`, one per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationRep {
    degree: usize,
    generators: Vec<Vec<u32>>,
}

impl PermutationRep {
    /// Checks that every generator is a bijection of `0..degree`.
    pub fn new(degree: usize, generators: Vec<Vec<u32>>) -> Result<Self, CoverError> {
        for (index, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(CoverError::DegreeMismatch(format!(
                    "generator {index} has {} images, expected {degree}",
                    g.len()
                )));
            }
            let mut hit = vec![false; degree];
            for &x in g {
                if x as usize >= degree || std::mem::replace(&mut hit[x as usize], true) {
                    return Err(CoverError::NotBijection { index, degree });
                }
            }
        }
        Ok(Self { degree, generators })
    }

    pub fn trivial(degree: usize, num_generators: usize) -> Self {
        Self {
            degree,
            generators: vec![(0..degree as u32).collect(); num_generators],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    fn inverses(&self) -> Vec<Vec<u32>> {
        self.generators
            .iter()
            .map(|g| {
                let mut inv = vec![0u32; self.degree];
                for (i, &x) in g.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                inv
            })
            .collect()
    }

    /// Sheet reached from `sheet` by reading `word` left to right.
    pub fn act(&self, word: &[Letter], sheet: u32) -> u32 {
        let inv = self.inverses();
        word.iter().fold(sheet, |s, l| {
            if l.inverse {
                inv[l.generator][s as usize]
            } else {
                self.generators[l.generator][s as usize]
            }
        })
    }

    /// Index of the first relator that fails to act trivially.
    pub fn check_relators(&self, relators: &[Word]) -> Result<(), CoverError> {
        let inv = self.inverses();
        for (index, w) in relators.iter().enumerate() {
            for s in 0..self.degree as u32 {
                let end = w.iter().fold(s, |s, l| {
                    if l.inverse {
                        inv[l.generator][s as usize]
                    } else {
                        self.generators[l.generator][s as usize]
                    }
                });
                if end != s {
                    return Err(CoverError::RelatorViolated { index });
                }
            }
        }
        Ok(())
    }

    /// Orbit of sheet 0 under the generated group.
    fn orbit_of_zero(&self) -> Vec<bool> {
        let inv = self.inverses();
        let mut seen = vec![false; self.degree];
        if self.degree == 0 {
            return seen;
        }
        seen[0] = true;
        let mut stack = vec![0u32];
        while let Some(s) = stack.pop() {
            for g in self.generators.iter().chain(inv.iter()) {
                let t = g[s as usize];
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_of_zero().into_iter().all(|b| b)
    }

    /// The permutation commuting with every generator that sends sheet 0 to
    /// `target`, if one exists.
    pub fn deck_transformation(&self, target: u32) -> Option<Vec<u32>> {
        equivariant_map(self, self, target)
    }

    /// Regular action: transitive with a deck transformation onto every sheet.
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && (0..self.degree as u32).all(|t| self.deck_transformation(t).is_some())
    }

    /// Whether the subgroup of this rep is contained in the one of
    /// `coarser`, i.e. the sheets of `self` map equivariantly onto those of
    /// `coarser` with `0 -> 0`.
    pub fn factors_through(&self, coarser: &PermutationRep) -> bool {
        self.num_generators() == coarser.num_generators() && equivariant_map(self, coarser, 0).is_some()
    }
}

/// Equivariant map from the sheets of `from` to those of `to` with
/// `0 -> target`, following the orbit of 0.
fn equivariant_map(from: &PermutationRep, to: &PermutationRep, target: u32) -> Option<Vec<u32>> {
    const UNSET: u32 = u32::MAX;
    if from.degree == 0 {
        return Some(Vec::new());
    }
    let (fi, ti) = (from.inverses(), to.inverses());
    let mut map = vec![UNSET; from.degree];
    map[0] = target;
    let mut stack = vec![0u32];
    while let Some(s) = stack.pop() {
        let image = map[s as usize];
        let moves = from.generators.iter().zip(&to.generators).chain(fi.iter().zip(&ti));
        for (fg, tg) in moves {
            let (a, b) = (fg[s as usize], tg[image as usize]);
            if map[a as usize] == UNSET {
                map[a as usize] = b;
                stack.push(a);
            } else if map[a as usize] != b {
                return None;
            }
        }
    }
    if map.contains(&UNSET) {
        return None;
    }
    Some(map)
}

/// A finite cover together with its covering projection.
#[derive(Clone, Debug)]
pub struct Cover {
    pub complex: SimplicialComplex,
    pub degree: usize,
    /// `projection[k][i] = (base cell, sheet of its first vertex, sign)` for
    /// cover cell `i` in dimension `k`; the sign compares the sorted cover
    /// orientation with the lifted base orientation.
    pub projection: Vec<Vec<(usize, u32, i8)>>,
    /// `lifts[k][base_cell * degree + sheet] = (cover cell, sign)`.
    pub lifts: Vec<Vec<(usize, i8)>>,
    pub connected: bool,
}

impl Cover {
    pub fn lift(&self, k: usize, base_cell: usize, sheet: u32) -> (usize, i8) {
        self.lifts[k][base_cell * self.degree + sheet as usize]
    }
}

/// Per-edge sheet permutation (`None` = identity) under a rep.
fn edge_perms<'a>(pres: &Presentation, rep: &'a PermutationRep) -> Vec<Option<&'a [u32]>> {
    pres.edge_generator
        .iter()
        .map(|g| g.map(|g| rep.generators[g].as_slice()))
        .collect()
}

/// Builds the `rep.degree()`-sheeted cover of `k` described by `rep`.
pub fn cover_from_permutations(k: &SimplicialComplex, rep: &PermutationRep) -> Result<Cover, CoverError> {
    let pres = spanning_tree_generators(k)?;
    cover_with_presentation(k, &pres, rep)
}

pub fn cover_with_presentation(
    k: &SimplicialComplex,
    pres: &Presentation,
    rep: &PermutationRep,
) -> Result<Cover, CoverError> {
    if rep.num_generators() != pres.num_generators() {
        return Err(CoverError::DegreeMismatch(format!(
            "rep has {} generators, presentation has {}",
            rep.num_generators(),
            pres.num_generators()
        )));
    }
    rep.check_relators(&pres.relators)?;
    let n = rep.degree();
    let nv = k.num_cells(0);
    let vidx: HashMap<Vertex, usize> = k.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let perms = edge_perms(pres, rep);
    let transport = |a: Vertex, b: Vertex, s: u32| -> u32 {
        let ei = k.cell_index(&[a, b]).expect("edge present");
        perms[ei].map_or(s, |p| p[s as usize])
    };

    let mut raw: Vec<Vec<Vec<Vertex>>> = Vec::with_capacity(k.dim() + 1);
    let mut meta: Vec<Vec<(usize, u32, i8)>> = Vec::with_capacity(k.dim() + 1);
    for dim in 0..=k.dim() {
        let mut cells = Vec::with_capacity(k.num_cells(dim) * n);
        let mut info = Vec::with_capacity(k.num_cells(dim) * n);
        for (ci, cell) in k.cells(dim).iter().enumerate() {
            for s in 0..n as u32 {
                let lifted: Vec<Vertex> = cell
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let sheet = if i == 0 { s } else { transport(cell[0], v, s) };
                        (sheet as usize * nv + vidx[&v]) as Vertex
                    })
                    .collect();
                let sign = permutation_sign(&lifted);
                cells.push(lifted);
                info.push((ci, s, sign));
            }
        }
        raw.push(cells);
        meta.push(info);
    }
    let complex = crate::complex::validate_complex(raw.clone())?;
    let mut projection: Vec<Vec<(usize, u32, i8)>> =
        (0..=k.dim()).map(|d| vec![(0, 0, 0); complex.num_cells(d)]).collect();
    let mut lifts: Vec<Vec<(usize, i8)>> = (0..=k.dim()).map(|d| vec![(0, 0); k.num_cells(d) * n]).collect();
    for dim in 0..=k.dim() {
        for (cell, &(ci, s, sign)) in raw[dim].iter_mut().zip(&meta[dim]) {
            cell.sort_unstable();
            let idx = complex.cell_index(cell).expect("lifted cell present");
            projection[dim][idx] = (ci, s, sign);
            lifts[dim][ci * n + s as usize] = (idx, sign);
        }
    }
    let connected = k.is_connected() && rep.is_transitive();
    Ok(Cover {
        complex,
        degree: n,
        projection,
        lifts,
        connected,
    })
}

/// Sign of the permutation sorting `v` (distinct entries).
fn permutation_sign(v: &[Vertex]) -> i8 {
    let mut inversions = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
