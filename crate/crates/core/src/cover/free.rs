//! Homomorphisms from the fundamental group onto the free group `F_2 = <x, y>`,
//! given as edge voltages, and their pullbacks of permutation actions.

use std::collections::HashMap;

use crate::complex::{rank, SimplicialComplex, Vertex};

use super::{spanning_tree_generators, CoverError, PermutationRep, Presentation};

/// Freely reduced word in `x = 0`, `y = 1`; `true` marks an inverse letter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord(Vec<(u8, bool)>);

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn letter(g: u8) -> Self {
        Self(vec![(g, false)])
    }

    /// `g^k` for any integer `k`.
    pub fn power(g: u8, k: i64) -> Self {
        Self(vec![(g, k < 0); k.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[(u8, bool)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|&(g, i)| (g, !i)).collect())
    }

    /// Reduced product `self * rhs`.
    pub fn concat(&self, rhs: &Self) -> Self {
        let mut out = self.0.clone();
        for &(g, i) in &rhs.0 {
            if out.last() == Some(&(g, !i)) {
                out.pop();
            } else {
                out.push((g, i));
            }
        }
        Self(out)
    }

    /// Exponent sums of `x` and `y`.
    pub fn abelianize(&self) -> [i64; 2] {
        let mut a = [0i64; 2];
        for &(g, i) in &self.0 {
            a[g as usize] += if i { -1 } else { 1 };
        }
        a
    }

    /// Sheet reached from `sheet` reading letters left to right.
    pub fn act(&self, x: &[u32], y: &[u32], x_inv: &[u32], y_inv: &[u32], sheet: u32) -> u32 {
        self.0.iter().fold(sheet, |s, &(g, inv)| {
            let table = match (g, inv) {
                (0, false) => x,
                (0, true) => x_inv,
                (_, false) => y,
                (_, true) => y_inv,
            };
            table[s as usize]
        })
    }
}

/// A homomorphism `pi_1(K) -> F_2` given by one voltage word per edge
/// (edge oriented from its smaller to its larger vertex).
#[derive(Clone, Debug)]
pub struct FreeQuotient {
    edge_words: Vec<FreeWord>,
}

impl FreeQuotient {
    /// Checks that every triangle's boundary voltage reduces to the identity
    /// and that the image abelianizes onto `Z^2`.
    pub fn new(k: &SimplicialComplex, edge_words: Vec<FreeWord>) -> Result<Self, CoverError> {
        if edge_words.len() != k.num_cells(1) {
            return Err(CoverError::NoFreeQuotient(format!(
                "{} voltages for {} edges",
                edge_words.len(),
                k.num_cells(1)
            )));
        }
        for tri in k.cells(2) {
            let e = |a, b| &edge_words[k.cell_index(&[a, b]).expect("face present")];
            let w = e(tri[0], tri[1])
                .concat(e(tri[1], tri[2]))
                .concat(&e(tri[0], tri[2]).inverse());
            if !w.is_empty() {
                return Err(CoverError::NoFreeQuotient(format!(
                    "triangle {tri:?} maps to nontrivial word"
                )));
            }
        }
        let q = Self { edge_words };
        let pres = spanning_tree_generators(k)?;
        let loops = q.generator_words(k, &pres);
        let abel: Vec<Vec<i64>> = loops.iter().map(|w| w.abelianize().to_vec()).collect();
        if abel.is_empty() || !spans_z2(&abel) {
            return Err(CoverError::NoFreeQuotient("image does not abelianize onto Z^2".into()));
        }
        Ok(q)
    }

    /// For a complex whose fundamental group is free of rank >= 2: the first
    /// two generators go to `x` and `y`, all others to the identity.
    pub fn for_free_fundamental_group(k: &SimplicialComplex) -> Result<Self, CoverError> {
        let pres = spanning_tree_generators(k)?;
        if pres.relators.iter().any(|r| !r.is_empty()) || pres.num_generators() < 2 {
            return Err(CoverError::NoFreeQuotient(
                "fundamental group is not visibly free of rank >= 2".into(),
            ));
        }
        let mut words = vec![FreeWord::identity(); k.num_cells(1)];
        words[pres.generator_edges[0]] = FreeWord::letter(0);
        words[pres.generator_edges[1]] = FreeWord::letter(1);
        Self::new(k, words)
    }

    pub fn edge_words(&self) -> &[FreeWord] {
        &self.edge_words
    }

    /// Voltage of each generator's fundamental loop
    /// (tree path to `u`, edge `u -> v`, tree path back from `v`).
    pub fn generator_words(&self, k: &SimplicialComplex, pres: &Presentation) -> Vec<FreeWord> {
        let mut to_vertex = vec![FreeWord::identity(); k.num_cells(0)];
        let vertices: Vec<Vertex> = k.vertices().collect();
        for &v in pres.bfs_order.iter().skip(1) {
            let (parent, ei) = pres.tree_parent[v].expect("non-root has a parent");
            let step = if vertices[parent] < vertices[v] {
                self.edge_words[ei].clone()
            } else {
                self.edge_words[ei].inverse()
            };
            to_vertex[v] = to_vertex[parent].concat(&step);
        }
        let vidx: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        pres.generator_edges
            .iter()
            .map(|&ei| {
                let e = &k.edges()[ei];
                to_vertex[vidx[&e[0]]]
                    .concat(&self.edge_words[ei])
                    .concat(&to_vertex[vidx[&e[1]]].inverse())
            })
            .collect()
    }

    /// Pulls the action of `x`, `y` on `0..n` back to a rep of `pi_1(K)`.
    pub fn pull_back(
        &self,
        k: &SimplicialComplex,
        pres: &Presentation,
        x: &[u32],
        y: &[u32],
    ) -> Result<PermutationRep, CoverError> {
        let n = x.len();
        let inv = |p: &[u32]| {
            let mut q = vec![0u32; p.len()];
            for (i, &v) in p.iter().enumerate() {
                q[v as usize] = i as u32;
            }
            q
        };
        let (xi, yi) = (inv(x), inv(y));
        let gens = self
            .generator_words(k, pres)
            .iter()
            .map(|w| (0..n as u32).map(|s| w.act(x, y, &xi, &yi, s)).collect())
            .collect();
        PermutationRep::new(n, gens)
    }
}

fn spans_z2(rows: &[Vec<i64>]) -> bool {
    // the 2x2 minors generate Z iff the lattice spanned by rows is all of Z^2
    let mut g = 0i64;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
            g = num_integer::gcd(g, det);
        }
    }
    g == 1
}

/// Schreier action of `F_2` on the cosets of an index-`n` subgroup:
/// `x` an `n`-cycle, `y` the transposition `(0 1)`.
pub fn schreier_action(n: usize) -> (Vec<u32>, Vec<u32>) {
    let x = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let mut y: Vec<u32> = (0..n as u32).collect();
    if n >= 2 {
        y.swap(0, 1);
    }
    (x, y)
}

/// Integer 1-cocycle on the edges of `k` representing a primitive class
/// (the first basis vector of the integral first cohomology), zero on tree
/// edges of the spanning-tree presentation.
pub fn primitive_integer_cocycle(k: &SimplicialComplex) -> Result<Vec<i64>, CoverError> {
    let pres = spanning_tree_generators(k)?;
    let basis = rank::integer_nullspace(&pres.relator_matrix(), pres.num_generators());
    let x = basis
        .into_iter()
        .next()
        .ok_or_else(|| CoverError::UnsupportedFamily("first cohomology is zero".into()))?;
    let mut cochain = vec![0i64; k.num_cells(1)];
    for (g, &ei) in pres.generator_edges.iter().enumerate() {
        cochain[ei] = x[g];
    }
    Ok(cochain)
}

impl FreeQuotient {
    /// Surjection of the genus-2 surface group onto `F_2` that kills one
    /// handle generator on each side: a primitive class of each punctured
    /// torus half is sent to `x` (first half) or `y` (second half).
    pub fn genus2_standard() -> (SimplicialComplex, Self) {
        use crate::complex::models::{genus2_parts, torus7, GENUS2_SEAM};
        let torus = torus7();
        let mut alpha = primitive_integer_cocycle(&torus).expect("torus has H^1");
        // add a coboundary so alpha vanishes on the seam triangle
        let edge = |a: Vertex, b: Vertex| torus.cell_index(&[a, b]).expect("seam edge");
        let [s0, s1, s3] = GENUS2_SEAM;
        let mut potential = [0i64; 7];
        potential[s1 as usize] = -alpha[edge(s0, s1)];
        potential[s3 as usize] = potential[s1 as usize] - alpha[edge(s1, s3)];
        for (ei, e) in torus.edges().iter().enumerate() {
            alpha[ei] += potential[e[1] as usize] - potential[e[0] as usize];
        }
        debug_assert!([edge(s0, s1), edge(s1, s3), edge(s0, s3)]
            .iter()
            .all(|&e| alpha[e] == 0));

        let parts = genus2_parts();
        let g2 = parts.complex;
        let mut words = vec![FreeWord::identity(); g2.num_cells(1)];
        for (letter, relabel) in [(0u8, &parts.first), (1u8, &parts.second)] {
            for (ei, e) in torus.edges().iter().enumerate() {
                if alpha[ei] == 0 {
                    continue;
                }
                let (a, b) = (relabel[e[0] as usize], relabel[e[1] as usize]);
                let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
                let gi = g2.cell_index(&[lo, hi]).expect("edge of half");
                words[gi] = FreeWord::power(letter, sign * alpha[ei]);
            }
        }
        let q = Self::new(&g2, words).expect("genus-2 voltages are a surjection");
        (g2, q)
    }
}
