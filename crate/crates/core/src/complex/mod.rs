//! Finite simplicial complexes, their integer boundary maps, Hodge
//! Laplacians and exact Betti numbers.
//!
//! Cells are stored as strictly increasing vertex tuples. The orientation of
//! a cell is the one induced by that order, so the boundary of
//! `[v0, ..., vk]` is `sum_i (-1)^i [v0, ..., ^vi, ..., vk]`.

pub mod models;
pub mod rank;
pub mod sparse;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use rank::rational_rank;
pub use sparse::IntegerSparseMatrix;

pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("cell {cell:?} in dimension {dim} repeats a vertex")]
    NonSimplicial { dim: usize, cell: Vec<Vertex> },
    #[error("cell {cell:?} appears more than once in dimension {dim}")]
    DuplicateCell { dim: usize, cell: Vec<Vertex> },
    #[error("face {face:?} of cell {cell:?} is missing")]
    MissingFace { cell: Vec<Vertex>, face: Vec<Vertex> },
    #[error("cell {cell:?} listed in dimension {dim} has {} vertices", cell.len())]
    MalformedCell { dim: usize, cell: Vec<Vertex> },
    #[error("degree {k} is outside the valid range for a complex of dimension {dim}")]
    DegreeOutOfRange { k: usize, dim: usize },
    #[error("complex has no cells")]
    Empty,
}

/// A validated finite simplicial complex.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RawCells", into = "RawCells")]
pub struct SimplicialComplex {
    cells: Vec<Vec<Vec<Vertex>>>,
    #[serde(skip)]
    index: Vec<HashMap<Vec<Vertex>, usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawCells {
    cells: Vec<Vec<Vec<Vertex>>>,
}

impl TryFrom<RawCells> for SimplicialComplex {
    type Error = ComplexError;
    fn try_from(raw: RawCells) -> Result<Self, Self::Error> {
        validate_complex(raw.cells)
    }
}

impl From<SimplicialComplex> for RawCells {
    fn from(k: SimplicialComplex) -> Self {
        RawCells { cells: k.cells }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("cell_counts", &self.cell_counts())
            .finish()
    }
}

/// Validates raw cell tables, one list of vertex tuples per dimension.
///
/// Tuples may be given in any vertex order; they are stored sorted.
pub fn validate_complex(raw: Vec<Vec<Vec<Vertex>>>) -> Result<SimplicialComplex, ComplexError> {
    let mut cells: Vec<Vec<Vec<Vertex>>> = Vec::with_capacity(raw.len());
    for (dim, table) in raw.into_iter().enumerate() {
        let mut seen = BTreeSet::new();
        let mut sorted_table = Vec::with_capacity(table.len());
        for cell in table {
            if cell.len() != dim + 1 {
                return Err(ComplexError::MalformedCell { dim, cell });
            }
            let mut s = cell.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::NonSimplicial { dim, cell });
            }
            if !seen.insert(s.clone()) {
                return Err(ComplexError::DuplicateCell { dim, cell: s });
            }
            sorted_table.push(s);
        }
        sorted_table.sort_unstable();
        cells.push(sorted_table);
    }
    while cells.last().is_some_and(|t| t.is_empty()) {
        cells.pop();
    }
    if cells.is_empty() {
        return Err(ComplexError::Empty);
    }
    let k = SimplicialComplex::from_sorted_tables(cells);
    for dim in 1..=k.dim() {
        for cell in &k.cells[dim] {
            for i in 0..cell.len() {
                let face = face_without(cell, i);
                if !k.index[dim - 1].contains_key(&face) {
                    return Err(ComplexError::MissingFace {
                        cell: cell.clone(),
                        face,
                    });
                }
            }
        }
    }
    Ok(k)
}

fn face_without(cell: &[Vertex], i: usize) -> Vec<Vertex> {
    cell.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &v)| v)
        .collect()
}

impl SimplicialComplex {
    fn from_sorted_tables(cells: Vec<Vec<Vec<Vertex>>>) -> Self {
        let index = cells
            .iter()
            .map(|t| t.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        Self { cells, index }
    }

    /// Downward closure of a list of maximal simplices.
    pub fn from_facets<I, C>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = C>,
        C: AsRef<[Vertex]>,
    {
        let mut tables: Vec<BTreeSet<Vec<Vertex>>> = Vec::new();
        for f in facets {
            let mut s = f.as_ref().to_vec();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::NonSimplicial {
                    dim: s.len().saturating_sub(1),
                    cell: f.as_ref().to_vec(),
                });
            }
            let n = s.len();
            // every nonempty subset of the facet
            for mask in 1u64..(1u64 << n) {
                let sub: Vec<Vertex> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                let d = sub.len() - 1;
                if tables.len() <= d {
                    tables.resize_with(d + 1, BTreeSet::new);
                }
                tables[d].insert(sub);
            }
        }
        if tables.is_empty() {
            return Err(ComplexError::Empty);
        }
        Ok(Self::from_sorted_tables(
            tables.into_iter().map(|t| t.into_iter().collect()).collect(),
        ))
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, k: usize) -> &[Vec<Vertex>] {
        self.cells.get(k).map(|t| t.as_slice()).unwrap_or(&[])
    }

    pub fn num_cells(&self, k: usize) -> usize {
        self.cells(k).len()
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|t| t.len()).collect()
    }

    pub fn cell_index(&self, cell: &[Vertex]) -> Option<usize> {
        let k = cell.len().checked_sub(1)?;
        self.index.get(k)?.get(cell).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.cells[0].iter().map(|c| c[0])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, t)| if k % 2 == 0 { t.len() as i64 } else { -(t.len() as i64) })
            .sum()
    }

    /// Edges of the 1-skeleton as vertex pairs.
    pub fn edges(&self) -> &[Vec<Vertex>] {
        self.cells(1)
    }

    /// Matrix of `d_k : C_k -> C_{k-1}` for `1 <= k <= dim`.
    pub fn boundary_matrix(&self, k: usize) -> Result<IntegerSparseMatrix, ComplexError> {
        if k == 0 || k > self.dim() {
            return Err(ComplexError::DegreeOutOfRange { k, dim: self.dim() });
        }
        Ok(self.boundary_or_zero(k))
    }

    /// `d_k`, with the zero map at `k = 0` and `k = dim + 1`.
    fn boundary_or_zero(&self, k: usize) -> IntegerSparseMatrix {
        let rows = if k == 0 { 0 } else { self.num_cells(k - 1) };
        let cols = self.num_cells(k);
        if k == 0 || cols == 0 {
            return IntegerSparseMatrix::zeros(rows, cols);
        }
        let mut triplets = Vec::with_capacity(cols * (k + 1));
        for (c, cell) in self.cells[k].iter().enumerate() {
            for i in 0..=k {
                let face = face_without(cell, i);
                let r = self.index[k - 1][&face];
                triplets.push((r, c, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        IntegerSparseMatrix::from_triplets(rows, cols, triplets)
    }

    fn check_degree(&self, k: usize) -> Result<(), ComplexError> {
        if k > self.dim() {
            Err(ComplexError::DegreeOutOfRange { k, dim: self.dim() })
        } else {
            Ok(())
        }
    }

    /// `b_k = dim C_k - rank d_k - rank d_{k+1}`, ranks exact over Q.
    pub fn betti_number(&self, k: usize) -> Result<usize, ComplexError> {
        self.check_degree(k)?;
        let rk = rational_rank(&self.boundary_or_zero(k));
        let rk1 = rational_rank(&self.boundary_or_zero(k + 1));
        Ok(self.num_cells(k) - rk - rk1)
    }

    pub fn betti_numbers(&self) -> BettiVector {
        let ranks: Vec<usize> = (0..=self.dim() + 1)
            .map(|k| rational_rank(&self.boundary_or_zero(k)))
            .collect();
        BettiVector {
            values: (0..=self.dim())
                .map(|k| self.num_cells(k) - ranks[k] - ranks[k + 1])
                .collect(),
        }
    }

    /// Combinatorial Hodge Laplacian `d_k^T d_k + d_{k+1} d_{k+1}^T`.
    pub fn hodge_laplacian(&self, k: usize) -> Result<IntegerSparseMatrix, ComplexError> {
        self.check_degree(k)?;
        let down = self.boundary_or_zero(k);
        let up = self.boundary_or_zero(k + 1);
        let n = self.num_cells(k);
        let mut lap = IntegerSparseMatrix::zeros(n, n);
        if down.rows() > 0 {
            lap = lap.add(&down.transpose().mul(&down));
        }
        if up.cols() > 0 {
            lap = lap.add(&up.mul(&up.transpose()));
        }
        Ok(lap)
    }

    /// Number of connected components of the 1-skeleton.
    pub fn components(&self) -> usize {
        let verts: Vec<Vertex> = self.vertices().collect();
        let pos: HashMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(verts.len());
        for e in self.edges() {
            uf.union(pos[&e[0]], pos[&e[1]]);
        }
        uf.count()
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }
}

/// Betti numbers `b_0, ..., b_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub values: Vec<usize>,
}

impl BettiVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.values
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    comps: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            comps: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.comps -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.comps
    }
}
