//! Small named complexes used as bases for covers and as test corpus.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SimplicialComplex, Vertex};

/// Single edge `[0, 1]`.
pub fn edge() -> SimplicialComplex {
    SimplicialComplex::from_facets([[0, 1]]).expect("valid")
}

/// Combinatorial circle: boundary of a triangle.
pub fn triangle_boundary() -> SimplicialComplex {
    cycle(3)
}

/// Cycle graph on `n >= 3` vertices as a 1-dimensional complex.
pub fn cycle(n: u32) -> SimplicialComplex {
    assert!(n >= 3, "simplicial cycles need at least 3 vertices");
    SimplicialComplex::from_facets((0..n).map(|i| [i, (i + 1) % n])).expect("valid")
}

pub fn filled_triangle() -> SimplicialComplex {
    SimplicialComplex::from_facets([[0, 1, 2]]).expect("valid")
}

/// Wedge of `k` triangle boundaries glued at vertex 0: fundamental group
/// free of rank `k`.
pub fn rose(k: u32) -> SimplicialComplex {
    let mut facets = Vec::new();
    for j in 0..k {
        let (a, b) = (1 + 2 * j, 2 + 2 * j);
        facets.push([0, a]);
        facets.push([a, b]);
        facets.push([0, b]);
    }
    SimplicialComplex::from_facets(facets).expect("valid")
}

/// Boundary of the octahedron, a 2-sphere.
pub fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
        facets.push([a, b, 4]);
        facets.push([a, b, 5]);
    }
    SimplicialComplex::from_facets(facets).expect("valid")
}

fn torus7_facets() -> Vec<[Vertex; 3]> {
    let mut f = Vec::new();
    for i in 0..7 {
        f.push([i, (i + 1) % 7, (i + 3) % 7]);
        f.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    f
}

/// Seven-vertex triangulation of the torus.
pub fn torus7() -> SimplicialComplex {
    SimplicialComplex::from_facets(torus7_facets()).expect("valid")
}

/// The triangle removed from each torus when building [`genus2`].
pub const GENUS2_SEAM: [Vertex; 3] = [0, 1, 3];

/// Genus-2 surface as the double of a punctured seven-vertex torus, with the
/// vertex relabelings of both halves.
pub struct Genus2Parts {
    pub complex: SimplicialComplex,
    /// Torus vertex `v` of the first half is vertex `first[v]`.
    pub first: Vec<Vertex>,
    /// Torus vertex `v` of the second half is vertex `second[v]`.
    pub second: Vec<Vertex>,
}

/// 11-vertex genus-2 surface: two copies of [`torus7`] with the triangle
/// [`GENUS2_SEAM`] removed, glued along its boundary.
pub fn genus2_parts() -> Genus2Parts {
    let first: Vec<Vertex> = (0..7).collect();
    let mut next = 7;
    let second: Vec<Vertex> = (0..7)
        .map(|v| {
            if GENUS2_SEAM.contains(&v) {
                v
            } else {
                next += 1;
                next - 1
            }
        })
        .collect();
    let mut facets = Vec::new();
    for f in torus7_facets() {
        let mut s = f;
        s.sort_unstable();
        if s == GENUS2_SEAM {
            continue;
        }
        facets.push(f.map(|v| first[v as usize]));
        facets.push(f.map(|v| second[v as usize]));
    }
    Genus2Parts {
        complex: SimplicialComplex::from_facets(facets).expect("valid"),
        first,
        second,
    }
}

pub fn genus2() -> SimplicialComplex {
    genus2_parts().complex
}

/// Disjoint union; the second complex's vertices are shifted past the first's.
pub fn disjoint_union(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let shift = a.vertices().max().map_or(0, |m| m + 1);
    let mut facets: Vec<Vec<Vertex>> = Vec::new();
    for k in 0..=a.dim() {
        facets.extend(a.cells(k).iter().cloned());
    }
    for k in 0..=b.dim() {
        facets.extend(b.cells(k).iter().map(|c| c.iter().map(|v| v + shift).collect()));
    }
    SimplicialComplex::from_facets(facets).expect("valid")
}

/// Random 2-complex: each vertex pair is an edge with probability
/// `p_edge`, each triangle with all edges present is filled with
/// probability `p_face`.
pub fn random_complex(n: u32, p_edge: f64, p_face: f64, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: BTreeMap<(Vertex, Vertex), ()> = BTreeMap::new();
    let mut facets: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p_edge) {
                adj.insert((a, b), ());
                facets.push(vec![a, b]);
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if !adj.contains_key(&(a, b)) {
                continue;
            }
            for c in b + 1..n {
                if adj.contains_key(&(a, c)) && adj.contains_key(&(b, c)) && rng.random_bool(p_face) {
                    facets.push(vec![a, b, c]);
                }
            }
        }
    }
    SimplicialComplex::from_facets(facets).expect("valid")
}
