//! Hutchinson estimate of tr exp(-t L) with a Chebyshev expansion, against
//! the dense eigensolve.

use llb::complex::models;
use llb::cover::{normal_chain_tower, TowerFamily};
use llb::lueck::{heat_trace_exact, heat_trace_stochastic};

fn main() {
    let tower = normal_chain_tower(&models::genus2(), &TowerFamily::ModPHomology { p: 2 }, 1).unwrap();
    let cover = &tower.levels[0].cover.complex;
    for k in 0..=2 {
        let lap = cover.hodge_laplacian(k).unwrap();
        for t in [0.1, 1.0, 10.0] {
            let exact = heat_trace_exact(&lap, t).unwrap();
            let est = heat_trace_stochastic(&lap, t, 200, None, 42).unwrap();
            println!(
                "k={k} n={:>4} t={t:>4}: exact {exact:>11.4} estimate {:>11.4} +- {:>8.4} (bias <= {:.1e}, degree {})",
                lap.rows(),
                est.estimate,
                est.std_error,
                est.bias_bound,
                est.poly_degree
            );
        }
    }
}
