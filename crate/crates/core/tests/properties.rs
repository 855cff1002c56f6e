//! Randomized invariants, checked against the oracles in `common`.

mod common;

use num_rational::Ratio;
use num_traits::{One, Zero};
use proptest::prelude::*;

use llb::complex::{models, SimplicialComplex};
use llb::cover::{cover_from_permutations, normal_chain_tower, spanning_tree_generators, PermutationRep, TowerFamily};
use llb::hyperbolic::{orbit_enumerate, HyperbolicSurface, Point};
use llb::io::{
    emit_complex, emit_graph, emit_permutation_rep, emit_surface, parse_complex, parse_graph, parse_permutation_rep,
    parse_surface,
};
use llb::local::{
    ball_census, canonical_ball_code, injectivity_radius_profile, thin_part_fraction, tv_distance, Graph,
};
use llb::lueck::{heat_trace_stochastic, Spectrum};

use common::{betti_oracle, brute_force_orbit, rooted_isomorphic};

fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    (4u32..11, 0.2f64..0.8, 0.0f64..0.8, any::<u64>())
        .prop_map(|(n, pe, pf, seed)| models::random_complex(n, pe, pf, seed))
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (3u32..12, 0.15f64..0.6, any::<u64>())
        .prop_map(|(n, pe, seed)| Graph::one_skeleton(&models::random_complex(n, pe, 0.0, seed)))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle()
}

/// A connected 1-dimensional base (no relators, so any permutations define a cover)
/// with a random permutation per generator.
fn graph_cover() -> impl Strategy<Value = (SimplicialComplex, PermutationRep)> {
    let params = (4u32..9, 0.3f64..0.9, any::<u64>(), 1usize..6);
    let connected = params.prop_filter("connected base", |&(n, pe, seed, _)| {
        models::random_complex(n, pe, 0.0, seed).is_connected()
    });
    connected.prop_flat_map(|(n, pe, seed, degree)| {
        let base = models::random_complex(n, pe, 0.0, seed);
        let gens = spanning_tree_generators(&base).unwrap().num_generators();
        proptest::collection::vec(permutation(degree), gens)
            .prop_map(move |perms| (base.clone(), PermutationRep::new(degree, perms).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_squares_to_zero(k in small_complex()) {
        for d in 2..=k.dim() {
            let dd = k.boundary_matrix(d - 1).unwrap().mul(&k.boundary_matrix(d).unwrap());
            prop_assert!(dd.is_zero(), "d{} d{} != 0", d - 1, d);
        }
    }

    #[test]
    fn betti_matches_oracle_and_euler(k in small_complex()) {
        let b = k.betti_numbers().values;
        prop_assert_eq!(&b, &betti_oracle(&k));
        let alt: i64 = b.iter().enumerate().map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(alt, k.euler_characteristic());
    }

    #[test]
    fn betti_is_laplacian_kernel(k in small_complex()) {
        for d in 0..=k.dim() {
            let spec = Spectrum::of(&k.hodge_laplacian(d).unwrap()).unwrap();
            prop_assert_eq!(spec.kernel_dim(), k.betti_number(d).unwrap());
        }
    }

    #[test]
    fn euler_characteristic_multiplies_under_covers((base, rep) in graph_cover()) {
        let degree = rep.degree();
        let cover = cover_from_permutations(&base, &rep).unwrap();
        prop_assert_eq!(cover.complex.euler_characteristic(), degree as i64 * base.euler_characteristic());
        prop_assert_eq!(cover.complex.cell_counts(), base.cell_counts().iter().map(|c| c * degree).collect::<Vec<_>>());
    }

    #[test]
    fn torus_covers_keep_chi_zero(a in 1u64..7, b in 1u64..7) {
        let family = TowerFamily::Cyclic { weights: None, moduli: vec![a * b] };
        let t = normal_chain_tower(&models::torus7(), &family, 1).unwrap();
        let c = &t.levels[0].cover.complex;
        prop_assert_eq!(c.euler_characteristic(), 0);
        prop_assert_eq!(betti_oracle(c), vec![1, 2, 1]);
    }

    #[test]
    fn census_is_a_distribution(g in small_graph(), r in 1usize..4) {
        let stats = ball_census(&g, r);
        let total: Ratio<i64> = stats.histogram.values().copied().sum();
        prop_assert_eq!(total, Ratio::one());
        prop_assert!(tv_distance(&stats, &stats).unwrap().is_zero());
    }

    #[test]
    fn ball_codes_agree_with_isomorphism(g in small_graph(), h in small_graph(), r in 1usize..3) {
        let balls = |g: &Graph| (0..g.num_vertices()).map(|v| g.ball(v, r)).collect::<Vec<_>>();
        let (bg, bh) = (balls(&g), balls(&h));
        for (a, da) in bg.iter().take(4) {
            for (b, db) in bh.iter().take(4) {
                if a.num_vertices() > 9 || b.num_vertices() > 9 {
                    continue;
                }
                let same_code = canonical_ball_code(a, da) == canonical_ball_code(b, db);
                prop_assert_eq!(same_code, rooted_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn thin_part_endpoints(g in small_graph()) {
        let profile = injectivity_radius_profile(&g);
        let finite: Vec<Ratio<i64>> = profile.iter().flatten().cloned().collect();
        let n = g.num_vertices() as i64;
        if let (Some(&lo), Some(&hi)) = (finite.iter().min(), finite.iter().max()) {
            prop_assert!(thin_part_fraction(&g, lo).unwrap().is_zero());
            let f = thin_part_fraction(&g, hi + Ratio::one()).unwrap();
            prop_assert_eq!(f, Ratio::new(finite.len() as i64, n));
        } else {
            prop_assert!(thin_part_fraction(&g, Ratio::from_integer(50)).unwrap().is_zero());
        }
    }

    #[test]
    fn complex_round_trip(k in small_complex()) {
        let text = emit_complex(&k);
        let back = parse_complex(&text).unwrap();
        prop_assert_eq!(&back, &k);
        prop_assert_eq!(emit_complex(&back), text);
    }

    #[test]
    fn graph_round_trip(g in small_graph()) {
        let text = emit_graph(&g);
        let (back, _) = parse_graph(&text).unwrap();
        prop_assert_eq!(emit_graph(&back), text);
    }

    #[test]
    fn permutation_round_trip(p in permutation(7), q in permutation(7)) {
        let rep = PermutationRep::new(7, vec![p, q]).unwrap();
        let text = emit_permutation_rep(&rep);
        prop_assert_eq!(parse_permutation_rep(&text).unwrap(), rep);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stochastic_brackets_exact(k in small_complex(), d in 0usize..2, t in 0.2f64..3.0, seed in any::<u64>()) {
        prop_assume!(d <= k.dim());
        let lap = k.hodge_laplacian(d).unwrap();
        prop_assume!(lap.rows() > 0);
        let exact = Spectrum::of(&lap).unwrap().heat_trace(t);
        let est = heat_trace_stochastic(&lap, t, 400, None, seed).unwrap();
        // 6 sigma keeps the per-case false-failure rate negligible
        prop_assert!((est.estimate - exact).abs() <= 6.0 * est.std_error + est.bias_bound + 1e-9,
            "{} vs {exact} (se {})", est.estimate, est.std_error);
    }

    #[test]
    fn cylinder_orbits_match_brute_force(l in 0.6f64..2.5, re in -1.0f64..1.0, im in 0.5f64..2.0, r in 0.5f64..5.0) {
        let s = HyperbolicSurface::cylinder(l).unwrap();
        let x = Point::new(re, im);
        let fast = orbit_enumerate(&s, x, x, r).unwrap().len();
        prop_assert_eq!(fast, brute_force_orbit(&s, x, x, r, 12));
    }

    #[test]
    fn surface_round_trip(l in 0.1f64..5.0) {
        let s = HyperbolicSurface::cylinder(l).unwrap();
        let text = emit_surface(&s);
        prop_assert_eq!(emit_surface(&parse_surface(&text).unwrap()), text);
    }
}

#[test]
fn genus2_orbits_match_brute_force() {
    let s = HyperbolicSurface::genus2_octagon();
    for x in s.sample_points(3, 9, 0.0) {
        for r in [1.0, 2.5, 4.0] {
            assert_eq!(
                orbit_enumerate(&s, x, x, r).unwrap().len(),
                brute_force_orbit(&s, x, x, r, 6),
                "x={x} r={r}"
            );
        }
    }
}
