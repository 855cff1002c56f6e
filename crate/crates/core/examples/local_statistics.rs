//! Rooted-ball censuses, their total-variation distance, and thin parts.

use llb::complex::models;
use llb::local::{ball_census, thin_part_profile, tv_distance, Graph};
use num_rational::Ratio;

fn main() {
    for n in [5, 7, 9] {
        let a = ball_census(&Graph::cycle(n), 2);
        let b = ball_census(&Graph::cycle(2 * n), 2);
        println!("tv(C_{n}, C_{}) at r = 2: {}", 2 * n, tv_distance(&a, &b).unwrap());
    }
    let petersen = ball_census(&Graph::petersen(), 2);
    let tree = ball_census(&Graph::star(3), 2);
    println!(
        "Petersen: {} ball type(s); star: {} type(s)",
        petersen.histogram.len(),
        tree.histogram.len()
    );
    println!(
        "tv(Petersen, C_10) at r = 2: {}",
        tv_distance(&petersen, &ball_census(&Graph::cycle(10), 2)).unwrap()
    );

    let skeleton = Graph::one_skeleton(&models::genus2());
    let grid: Vec<Ratio<i64>> = (1..=4).map(|i| Ratio::new(i, 2)).collect();
    let profile = thin_part_profile(&skeleton, &grid).unwrap();
    for (r, f) in profile.r_grid.iter().zip(&profile.fractions) {
        println!("genus-2 skeleton: fraction of vertices with injectivity radius < {r}: {f}");
    }
}
