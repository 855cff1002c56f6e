//! A surface group maps onto a free group, so pulling back the non-normal
//! subgroup chain of the free group gives covers whose first Betti numbers
//! grow linearly with the degree.

use llb::cover::{free_subgroup_chain_tower, normal_chain_tower, FreeQuotient, TowerFamily};
use llb::lueck::normalized_betti_sequence;

fn main() {
    let (surface, quotient) = FreeQuotient::genus2_standard();
    let free = free_subgroup_chain_tower(&surface, 4, Some(&quotient)).unwrap();
    let report = normalized_betti_sequence(&free, 1).unwrap();
    println!("free-chain pullbacks of the genus-2 surface");
    for (l, lv) in report.levels.iter().zip(&free.levels) {
        println!(
            "  degree {}: b_1 = {:>2}, b_1/degree = {}, normal {}",
            l.degree, l.betti, l.normalized, lv.is_normal
        );
    }
    let normal = normal_chain_tower(&surface, &TowerFamily::ModPHomology { p: 2 }, 1).unwrap();
    let r = normalized_betti_sequence(&normal, 1).unwrap();
    let l = &r.levels[0];
    println!(
        "mod-2 homology cover: degree {}, b_1 = {}, b_1/degree = {}",
        l.degree, l.betti, l.normalized
    );
}
