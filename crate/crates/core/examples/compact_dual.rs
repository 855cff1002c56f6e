//! Limits predicted by the compact dual, and the exact genus sweep for
//! closed hyperbolic surfaces.

use llb::hyperbolic::{compact_dual_entry, compact_dual_l2_betti, genus_limit_check};

fn main() {
    for space in ["H2", "H3"] {
        let e = compact_dual_entry(space).unwrap();
        let betti: Vec<f64> = (0..=e.dim).map(|k| compact_dual_l2_betti(space, k).unwrap()).collect();
        println!(
            "{space}: dual {}, chi {}, vol {:.6}, betti {betti:?}",
            e.dual, e.dual_euler_characteristic, e.dual_volume
        );
    }
    println!("1/(2 pi) = {:.12}", 1.0 / (2.0 * std::f64::consts::PI));
    for row in genus_limit_check(&[2, 3, 10, 100, 1_000_000]).unwrap() {
        println!(
            "g = {:>7}: b_1 = {:>7}, pi * (b_1/area - 1/(2 pi)) = {}",
            row.genus, row.b1, row.deviation_times_pi
        );
    }
}
