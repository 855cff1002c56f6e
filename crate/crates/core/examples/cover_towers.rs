//! Towers of finite covers built from permutation representations of the
//! edge-path group.

use llb::complex::models;
use llb::cover::{normal_chain_tower, CoverTower, TowerFamily};

fn describe(name: &str, t: &CoverTower) {
    println!("{name} ({})", t.family);
    println!("  degrees      {:?}", t.degrees());
    println!("  nested       {}", t.is_nested());
    println!("  all normal   {}", t.levels.iter().all(|l| l.is_normal));
    println!("  all connected {}", t.levels.iter().all(|l| l.is_connected));
    let chi: Vec<i64> = t
        .levels
        .iter()
        .map(|l| l.cover.complex.euler_characteristic())
        .collect();
    println!("  euler chars  {chi:?} (base {})", t.base.euler_characteristic());
}

fn main() {
    let rose = models::rose(2);
    let central = normal_chain_tower(&rose, &TowerFamily::ModPCentral { p: 2, refine: true }, 6).unwrap();
    describe("rose_2, refined mod-2 central series", &central);

    let central3 = normal_chain_tower(&rose, &TowerFamily::ModPCentral { p: 3, refine: false }, 2).unwrap();
    describe("rose_2, mod-3 central series", &central3);

    let homology = normal_chain_tower(&rose, &TowerFamily::ModPHomology { p: 2 }, 2).unwrap();
    describe("rose_2, iterated mod-2 homology covers", &homology);

    let circle = TowerFamily::Cyclic {
        weights: None,
        moduli: vec![2, 4, 8, 16],
    };
    describe(
        "circle, cyclic covers",
        &normal_chain_tower(&models::triangle_boundary(), &circle, 4).unwrap(),
    );

    let g2 = normal_chain_tower(&models::genus2(), &TowerFamily::ModPHomology { p: 2 }, 1).unwrap();
    describe("genus-2 surface, mod-2 homology cover", &g2);
}
