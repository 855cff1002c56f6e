//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's rank, canonical-form or enumeration code.

#![allow(dead_code)]

use std::collections::HashMap;

use llb::complex::SimplicialComplex;
use llb::hyperbolic::{distance, mobius, HyperbolicSurface, Mat2, Point};
use llb::local::Graph;

pub const ORACLE_PRIME: u64 = 1_000_000_007;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank of a dense matrix over `F_p` by plain Gaussian elimination.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % p;
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dense boundary `C_d -> C_{d-1}` over `F_p`, built straight from the
/// cell lists with the alternating-sign face rule.
pub fn dense_boundary(k: &SimplicialComplex, d: usize, p: u64) -> Vec<Vec<u64>> {
    let faces: HashMap<&[u32], usize> = k
        .cells(d - 1)
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    let mut m = vec![vec![0u64; k.num_cells(d)]; k.num_cells(d - 1)];
    for (j, cell) in k.cells(d).iter().enumerate() {
        for i in 0..cell.len() {
            let face: Vec<u32> = cell
                .iter()
                .enumerate()
                .filter(|&(x, _)| x != i)
                .map(|(_, &v)| v)
                .collect();
            let row = faces[face.as_slice()];
            m[row][j] = if i % 2 == 0 { 1 } else { p - 1 };
        }
    }
    m
}

/// Betti numbers over `F_p` for a large prime; equal to the rational ones
/// for every torsion-free complex in the corpus.
pub fn betti_oracle(k: &SimplicialComplex) -> Vec<usize> {
    let p = ORACLE_PRIME;
    let ranks: Vec<usize> = (0..=k.dim() + 1)
        .map(|d| {
            if d == 0 || d > k.dim() {
                0
            } else {
                rank_mod_p(dense_boundary(k, d, p), p)
            }
        })
        .collect();
    (0..=k.dim())
        .map(|d| k.num_cells(d) - ranks[d] - ranks[d + 1])
        .collect()
}

/// Connected components of the 1-skeleton by union-find.
pub fn components(k: &SimplicialComplex) -> usize {
    let verts: Vec<u32> = k.cells(0).iter().map(|c| c[0]).collect();
    let index: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = verts.len();
    if k.dim() >= 1 {
        for e in k.cells(1) {
            let (a, b) = (find(&mut parent, index[&e[0]]), find(&mut parent, index[&e[1]]));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
    }
    count
}

/// `b_1` of a graph-like complex: `E - V + components`.
pub fn graph_b1(k: &SimplicialComplex) -> usize {
    k.num_cells(1) + components(k) - k.num_cells(0)
}

/// Rooted isomorphism by exhaustive backtracking over bijections fixing
/// vertex 0, pruning only on adjacency consistency and degree.
pub fn rooted_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.num_vertices();
    if n != b.num_vertices() || a.num_edges() != b.num_edges() {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(a: &Graph, b: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = a.num_vertices();
        if v == n {
            return true;
        }
        let candidates: Vec<usize> = if v == 0 { vec![0] } else { (1..n).collect() };
        for w in candidates {
            if used[w] || a.neighbors(v).len() != b.neighbors(w).len() {
                continue;
            }
            let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(a, b, v + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }
    extend(a, b, 0, &mut map, &mut used)
}

/// Distinct group elements among all words of length `<= max_len` whose
/// image of `y` lies within `r` of `x`, found by depth-first search over
/// freely reduced words (free reduction only shortens a word, so no element
/// is lost). Elements are identified by the image of a generic point.
pub fn brute_force_orbit(s: &HyperbolicSurface, x: Point, y: Point, r: f64, max_len: usize) -> usize {
    struct Walk<'a> {
        letters: Vec<i32>,
        mats: Vec<Mat2>,
        x: Point,
        y: Point,
        r: f64,
        max_len: usize,
        found: &'a mut Vec<Point>,
    }
    const GENERIC: Point = Point::new(0.123, 1.377);
    fn visit(w: &mut Walk, g: Mat2, last: i32, len: usize) {
        if distance(w.x, mobius(&g, w.y)) <= w.r {
            let z = mobius(&g, GENERIC);
            if !w.found.iter().any(|&f| distance(z, f) < 1e-6) {
                w.found.push(z);
            }
        }
        if len == w.max_len {
            return;
        }
        for i in 0..w.letters.len() {
            let l = w.letters[i];
            if l == -last {
                continue;
            }
            let h = g * w.mats[i];
            visit(w, h, l, len + 1);
        }
    }
    let letters = s.letters();
    let mats = letters.iter().map(|&l| s.letter_matrix(l)).collect();
    let mut found = Vec::new();
    let mut walk = Walk {
        letters,
        mats,
        x,
        y,
        r,
        max_len,
        found: &mut found,
    };
    visit(&mut walk, Mat2::identity(), 0, 0);
    found.len()
}

/// `K_t(x, x)` on the cylinder with translation length `l`, summing the
/// lattice directly: `cosh d(x, g^k x) = cosh^2(rho) cosh(k l) - sinh^2(rho)`
/// for `x` at distance `rho` from the axis.
pub fn cylinder_lattice_sum(l: f64, x: Point, t: f64) -> f64 {
    // axis is the imaginary half-line; cosh(rho) = |x| / Im x
    let cosh_rho = x.norm() / x.im;
    let sinh2 = cosh_rho * cosh_rho - 1.0;
    let term = |k: i64| {
        let c = cosh_rho * cosh_rho * (k as f64 * l).cosh() - sinh2;
        llb::hyperbolic::h2_heat_kernel(c.max(1.0).acosh(), t).unwrap()
    };
    let mut sum = term(0);
    let mut k = 1;
    loop {
        let pair = 2.0 * term(k);
        sum += pair;
        if pair < 1e-300 || pair < sum * 1e-18 {
            break;
        }
        k += 1;
    }
    sum
}

/// Simpson's rule with `n` (even) intervals.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}
