//! Normalized first Betti numbers along a mod-2 tower of the rose, with the
//! heat-trace plateau as an independent estimate of the limit.

use llb::complex::models;
use llb::cover::{normal_chain_tower, TowerFamily};
use llb::lueck::{l2_betti_plateau, log_grid, normalized_betti_sequence, TraceMode};

fn main() {
    let tower = normal_chain_tower(&models::rose(2), &TowerFamily::ModPCentral { p: 2, refine: true }, 8).unwrap();
    let report = normalized_betti_sequence(&tower, 1).unwrap();
    println!("degree  b_1  b_1/degree");
    for l in &report.levels {
        println!("{:>6} {:>4}  {}", l.degree, l.betti, l.normalized);
    }
    println!("fitted limit {} ({:?})", report.fitted_limit, report.verdict);

    let grid = log_grid(0.1, 1e4, 21);
    let est = l2_betti_plateau(&tower, 1, &grid, TraceMode::Exact).unwrap();
    println!(
        "heat-trace plateau {:.6} at t = {} (monotone {}, dominates b_1 {})",
        est.value, est.t_star, est.monotone, est.domination
    );
}
