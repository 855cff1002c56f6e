//! Towers of finite covers.
//!
//! Normal chains come from two sources:
//!
//! * mod-`p` series. Given the cover for a normal subgroup `N`, the next
//!   layer is cut out by mod-`p` cohomology classes of that cover. Taking
//!   every class gives the derived mod-`p` series (`N -> ker(N -> H_1(N; F_p))`);
//!   taking the classes fixed by the deck group gives the lower exponent-`p`
//!   central series (`N -> N^p [N, G]`). A central layer of rank `r` can be
//!   split into `r` index-`p` steps, each of which is still normal in `G`.
//! * cyclic `Z/n` quotients of a homomorphism `G -> Z` given by integer
//!   weights on the generators.
//!
//! Free chains pull back the Schreier actions of index-`n` subgroups of `F_2`
//! along a surjection `G -> F_2`; these covers are generally not normal.

use serde::{Deserialize, Serialize};

use crate::complex::rank::nullspace_mod_p;
use crate::complex::{rank, SimplicialComplex};

use super::free::{schreier_action, FreeQuotient};
use super::{cover_with_presentation, spanning_tree_generators, Cover, CoverError, PermutationRep, Presentation};

/// Largest number of sheets a tower level may have.
pub const MAX_DEGREE: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TowerFamily {
    /// Lower exponent-`p` central series, optionally split into index-`p` steps.
    ModPCentral { p: u64, refine: bool },
    /// Iterated full mod-`p` homology covers.
    ModPHomology { p: u64 },
    /// `Z/n` quotients of the homomorphism to `Z` with the given generator
    /// weights (a primitive integral class when `None`).
    Cyclic {
        weights: Option<Vec<i64>>,
        moduli: Vec<u64>,
    },
}

impl TowerFamily {
    pub fn label(&self) -> String {
        match self {
            TowerFamily::ModPCentral { p, refine: true } => format!("mod-{p}-central-refined"),
            TowerFamily::ModPCentral { p, refine: false } => format!("mod-{p}-central"),
            TowerFamily::ModPHomology { p } => format!("mod-{p}-homology"),
            TowerFamily::Cyclic { .. } => "cyclic".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub rep: PermutationRep,
    pub cover: Cover,
    pub degree: usize,
    pub is_normal: bool,
    pub is_connected: bool,
}

impl TowerLevel {
    fn build(base: &SimplicialComplex, pres: &Presentation, rep: PermutationRep) -> Result<Self, CoverError> {
        let cover = cover_with_presentation(base, pres, &rep)?;
        Ok(Self {
            degree: rep.degree(),
            is_normal: rep.is_regular(),
            is_connected: cover.connected,
            rep,
            cover,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CoverTower {
    pub base: SimplicialComplex,
    pub presentation: Presentation,
    pub levels: Vec<TowerLevel>,
    pub family: String,
    /// Set only where the chain's intersection is trivial by construction.
    pub trivial_intersection: bool,
}

impl CoverTower {
    pub fn degrees(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.degree).collect()
    }

    /// Whether each level's subgroup lies in the previous level's.
    pub fn is_nested(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].rep.factors_through(&w[0].rep))
    }

    /// Assembles a tower from explicit reps (used when reading manifests).
    pub fn from_reps(
        base: SimplicialComplex,
        reps: Vec<PermutationRep>,
        family: String,
        trivial_intersection: bool,
    ) -> Result<Self, CoverError> {
        let presentation = spanning_tree_generators(&base)?;
        let levels = reps
            .into_iter()
            .map(|r| TowerLevel::build(&base, &presentation, r))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            base,
            presentation,
            levels,
            family,
            trivial_intersection,
        })
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Graphs and closed orientable surfaces have residually-`p` fundamental
/// groups, so their mod-`p` series intersect trivially.
fn residually_p_base(k: &SimplicialComplex) -> bool {
    if k.num_cells(2) == 0 {
        return true;
    }
    if k.dim() != 2 {
        return false;
    }
    let every_edge_in_two = {
        let mut count = vec![0usize; k.num_cells(1)];
        for t in k.cells(2) {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                count[k.cell_index(&[a, b]).expect("face")] += 1;
            }
        }
        count.iter().all(|&c| c == 2)
    };
    every_edge_in_two && k.is_connected() && k.betti_number(2).ok() == Some(1)
}

/// Tower of normal covers of `k` with `depth` levels.
pub fn normal_chain_tower(k: &SimplicialComplex, family: &TowerFamily, depth: usize) -> Result<CoverTower, CoverError> {
    let pres = spanning_tree_generators(k)?;
    let reps = match family {
        TowerFamily::ModPCentral { p, refine } => mod_p_reps(k, &pres, *p, true, *refine, depth)?,
        TowerFamily::ModPHomology { p } => mod_p_reps(k, &pres, *p, false, false, depth)?,
        TowerFamily::Cyclic { weights, moduli } => {
            let w = match weights {
                Some(w) => {
                    if w.len() != pres.num_generators() {
                        return Err(CoverError::DegreeMismatch(format!(
                            "{} weights for {} generators",
                            w.len(),
                            pres.num_generators()
                        )));
                    }
                    for (index, row) in pres.relator_matrix().iter().enumerate() {
                        if row.iter().zip(w).map(|(a, b)| a * b).sum::<i64>() != 0 {
                            return Err(CoverError::RelatorViolated { index });
                        }
                    }
                    w.clone()
                }
                None => rank::integer_nullspace(&pres.relator_matrix(), pres.num_generators())
                    .into_iter()
                    .next()
                    .ok_or_else(|| CoverError::UnsupportedFamily("no homomorphism onto Z".into()))?,
            };
            moduli
                .iter()
                .take(depth)
                .map(|&n| cyclic_rep(&w, n as usize))
                .collect::<Result<_, _>>()?
        }
    };
    let levels: Vec<TowerLevel> = reps
        .into_iter()
        .map(|r| TowerLevel::build(k, &pres, r))
        .collect::<Result<_, _>>()?;
    let trivial_intersection = matches!(
        family,
        TowerFamily::ModPCentral { .. } | TowerFamily::ModPHomology { .. }
    ) && residually_p_base(k);
    Ok(CoverTower {
        base: k.clone(),
        presentation: pres,
        levels,
        family: family.label(),
        trivial_intersection,
    })
}

fn cyclic_rep(weights: &[i64], n: usize) -> Result<PermutationRep, CoverError> {
    if n == 0 {
        return Err(CoverError::UnsupportedFamily("modulus 0".into()));
    }
    if n > MAX_DEGREE {
        return Err(CoverError::DegreeCap {
            degree: n as u128,
            cap: MAX_DEGREE,
        });
    }
    let gens = weights
        .iter()
        .map(|&w| {
            let shift = w.rem_euclid(n as i64) as usize;
            (0..n).map(|a| ((a + shift) % n) as u32).collect()
        })
        .collect();
    PermutationRep::new(n, gens)
}

fn mod_p_reps(
    k: &SimplicialComplex,
    pres: &Presentation,
    p: u64,
    central: bool,
    refine: bool,
    depth: usize,
) -> Result<Vec<PermutationRep>, CoverError> {
    if !is_prime(p) {
        return Err(CoverError::UnsupportedFamily(format!("{p} is not prime")));
    }
    let mut out = Vec::new();
    let mut layer_rep = PermutationRep::trivial(1, pres.num_generators());
    while out.len() < depth {
        let layer_cover = cover_with_presentation(k, pres, &layer_rep)?;
        let classes = layer_classes(k, pres, &layer_rep, &layer_cover, p, central)?;
        if classes.is_empty() {
            return Err(CoverError::UnsupportedFamily(format!(
                "mod-{p} series stabilizes at degree {}",
                layer_rep.degree()
            )));
        }
        let full = (p as u128)
            .checked_pow(classes.len() as u32)
            .and_then(|m| m.checked_mul(layer_rep.degree() as u128))
            .unwrap_or(u128::MAX);
        let steps: Vec<usize> = if refine {
            (1..=classes.len()).collect()
        } else {
            vec![classes.len()]
        };
        for s in steps {
            if out.len() == depth {
                break;
            }
            out.push(extend_rep(&layer_rep, &classes[..s], p)?);
        }
        if out.len() == depth {
            break;
        }
        if full > MAX_DEGREE as u128 {
            return Err(CoverError::DegreeCap {
                degree: full,
                cap: MAX_DEGREE,
            });
        }
        layer_rep = extend_rep(&layer_rep, &classes, p)?;
    }
    Ok(out)
}

/// Sheets `(a, v)` with `v in F_p^s`, indexed `a + n * sum v_i p^i`;
/// generator `g` sends `(a, v)` to `(rho_g(a), v + c(g, a))`.
fn extend_rep(rep: &PermutationRep, classes: &[Vec<u64>], p: u64) -> Result<PermutationRep, CoverError> {
    let n = rep.degree();
    let total = (p as u128)
        .checked_pow(classes.len() as u32)
        .and_then(|m| m.checked_mul(n as u128))
        .unwrap_or(u128::MAX);
    if total > MAX_DEGREE as u128 {
        return Err(CoverError::DegreeCap {
            degree: total,
            cap: MAX_DEGREE,
        });
    }
    let m = total as usize / n;
    let gens = rep
        .generators()
        .iter()
        .enumerate()
        .map(|(g, perm)| {
            let mut out = vec![0u32; n * m];
            for a in 0..n {
                for vi in 0..m {
                    let mut rest = vi;
                    let mut target = 0usize;
                    let mut place = 1usize;
                    for c in classes {
                        let digit = (rest % p as usize) as u64;
                        rest /= p as usize;
                        let shifted = (digit + c[g * n + a]) % p;
                        target += shifted as usize * place;
                        place *= p as usize;
                    }
                    out[a + n * vi] = (perm[a] as usize + n * target) as u32;
                }
            }
            out
        })
        .collect();
    PermutationRep::new(n * m, gens)
}

/// Basis of mod-`p` first cohomology of the cover (deck-invariant classes
/// when `invariant`), each expressed as voltages `c[g * n + a]` on the lift
/// of base generator `g` at sheet `a`.
fn layer_classes(
    base: &SimplicialComplex,
    base_pres: &Presentation,
    rep: &PermutationRep,
    cover: &Cover,
    p: u64,
    invariant: bool,
) -> Result<Vec<Vec<u64>>, CoverError> {
    let kj = &cover.complex;
    let pres = spanning_tree_generators(kj)?;
    let gj = pres.num_generators();
    let mut rows: Vec<Vec<u64>> = pres
        .relator_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(|v| v.rem_euclid(p as i64) as u64).collect())
        .collect();
    if invariant {
        let tour = EulerTour::new(&pres, kj.num_cells(0));
        for g in 0..rep.num_generators() {
            let sigma = rep
                .deck_transformation(rep.generators()[g][0])
                .ok_or_else(|| CoverError::UnsupportedFamily("layer cover is not normal".into()))?;
            let a = pullback_matrix(kj, cover, &pres, &tour, &sigma, p);
            for (h, mut row) in a.into_iter().enumerate() {
                row[h] = (row[h] + p - 1) % p;
                rows.push(row);
            }
        }
    }
    let basis = nullspace_mod_p(&rows, gj, p);

    let n = rep.degree();
    let nv = base.num_cells(0);
    let base_vertices: Vec<u32> = base.vertices().collect();
    let mut classes = Vec::with_capacity(basis.len());
    for x in basis {
        let mut c = vec![0u64; kj.num_cells(1)];
        for (h, &ei) in pres.generator_edges.iter().enumerate() {
            c[ei] = x[h];
        }
        // potential making c vanish on every lift of the base spanning tree
        let mut phi = vec![0u64; kj.num_cells(0)];
        for a in 0..n as u32 {
            for &v in base_pres.bfs_order.iter().skip(1) {
                let (u, ei) = base_pres.tree_parent[v].expect("tree parent");
                let (ce, sign) = cover.lift(1, ei, a);
                let along_base = signed(c[ce], sign, p);
                let step = if base_vertices[u] < base_vertices[v] {
                    along_base
                } else {
                    (p - along_base) % p
                };
                let (vu, vv) = (cover.lift(0, u, a).0, cover.lift(0, v, a).0);
                phi[vv] = (phi[vu] + step) % p;
            }
        }
        let mut volt = vec![0u64; rep.num_generators() * n];
        for (g, &ei) in base_pres.generator_edges.iter().enumerate() {
            let e = &base.edges()[ei];
            let (u, v) = (
                base.cell_index(&[e[0]]).expect("vertex"),
                base.cell_index(&[e[1]]).expect("vertex"),
            );
            for a in 0..n as u32 {
                let (ce, sign) = cover.lift(1, ei, a);
                let b = rep.generators()[g][a as usize];
                let (lu, lv) = (cover.lift(0, u, a).0, cover.lift(0, v, b).0);
                let val = (signed(c[ce], sign, p) + phi[lu] + p - phi[lv]) % p;
                volt[g * n + a as usize] = val;
            }
        }
        debug_assert!(nv > 0);
        classes.push(volt);
    }
    Ok(classes)
}

fn signed(v: u64, sign: i8, p: u64) -> u64 {
    if sign >= 0 {
        v
    } else {
        (p - v) % p
    }
}

/// Entry/exit times of the spanning tree for subtree membership tests.
struct EulerTour {
    tin: Vec<usize>,
    tout: Vec<usize>,
}

impl EulerTour {
    fn new(pres: &Presentation, nv: usize) -> Self {
        let mut children = vec![Vec::new(); nv];
        for (v, par) in pres.tree_parent.iter().enumerate() {
            if let Some((u, _)) = par {
                children[*u].push(v);
            }
        }
        let root = pres.bfs_order[0];
        let (mut tin, mut tout) = (vec![0; nv], vec![0; nv]);
        let mut clock = 0;
        let mut stack = vec![(root, false)];
        while let Some((v, done)) = stack.pop() {
            if done {
                tout[v] = clock;
                continue;
            }
            tin[v] = clock;
            clock += 1;
            stack.push((v, true));
            for &c in &children[v] {
                stack.push((c, false));
            }
        }
        Self { tin, tout }
    }

    fn in_subtree(&self, w: usize, root: usize) -> bool {
        self.tin[root] <= self.tin[w] && self.tin[w] < self.tout[root]
    }
}

/// Matrix `A` with `A[h'][h]` the coefficient of generator `h'` in the
/// normalized pullback of the indicator cochain of generator `h` under the
/// deck transformation `sigma`.
fn pullback_matrix(
    kj: &SimplicialComplex,
    cover: &Cover,
    pres: &Presentation,
    tour: &EulerTour,
    sigma: &[u32],
    p: u64,
) -> Vec<Vec<u64>> {
    let gj = pres.num_generators();
    let mut inv = vec![0u32; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s as usize] = i as u32;
    }
    let mut a = vec![vec![0u64; gj]; gj];
    let gen_ends: Vec<(usize, usize)> = pres
        .generator_edges
        .iter()
        .map(|&ei| {
            let e = &kj.edges()[ei];
            (e[0] as usize, e[1] as usize)
        })
        .collect();
    for (h, &eh) in pres.generator_edges.iter().enumerate() {
        let (b, sheet_h, sign_h) = cover.projection[1][eh];
        let (e, sign_e) = cover.lift(1, b, inv[sheet_h as usize]);
        let val = signed(1, sign_e * sign_h, p);
        if let Some(h2) = pres.edge_generator[e] {
            a[h2][h] = (a[h2][h] + val) % p;
            continue;
        }
        let ends = &kj.edges()[e];
        let (lo, hi) = (ends[0] as usize, ends[1] as usize);
        let (child, parent_is_lo) = if pres.tree_parent[hi].map(|t| t.1) == Some(e) {
            (hi, true)
        } else {
            (lo, false)
        };
        let along = if parent_is_lo { val } else { (p - val) % p };
        for (h2, &(u, v)) in gen_ends.iter().enumerate() {
            let du = tour.in_subtree(u, child) as i64 - tour.in_subtree(v, child) as i64;
            if du != 0 {
                let contrib = if du > 0 { along } else { (p - along) % p };
                a[h2][h] = (a[h2][h] + contrib) % p;
            }
        }
    }
    a
}

/// Pullbacks of the index-`n` Schreier actions, `n = 1..=depth`, along a
/// surjection onto `F_2` (derived automatically when `pi_1(k)` is free).
pub fn free_subgroup_chain_tower(
    k: &SimplicialComplex,
    depth: usize,
    quotient: Option<&FreeQuotient>,
) -> Result<CoverTower, CoverError> {
    let pres = spanning_tree_generators(k)?;
    let owned;
    let q = match quotient {
        Some(q) => q,
        None => {
            owned = FreeQuotient::for_free_fundamental_group(k)?;
            &owned
        }
    };
    if depth > MAX_DEGREE {
        return Err(CoverError::DegreeCap {
            degree: depth as u128,
            cap: MAX_DEGREE,
        });
    }
    let mut levels = Vec::with_capacity(depth);
    for n in 1..=depth {
        let (x, y) = schreier_action(n);
        let rep = q.pull_back(k, &pres, &x, &y)?;
        levels.push(TowerLevel::build(k, &pres, rep)?);
    }
    Ok(CoverTower {
        base: k.clone(),
        presentation: pres,
        levels,
        family: "free-chain".into(),
        trivial_intersection: false,
    })
}
