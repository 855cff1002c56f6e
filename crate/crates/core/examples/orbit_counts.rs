//! Orbit counts in hyperbolic balls and a single constant bounding them in
//! terms of the injectivity radius.

use llb::hyperbolic::{
    fit_orbit_constant, injectivity_radius, orbit_enumerate, HyperbolicSurface, OrbitCountCase, Point,
};

fn main() {
    let mut cases = Vec::new();
    let x = Point::new(0.0, 1.0);
    for l in [0.25, 0.5, 1.0, 2.0] {
        let s = HyperbolicSurface::cylinder(l).unwrap();
        let iota = injectivity_radius(&s, x).unwrap();
        for r in [2.0, 4.0, 6.0] {
            let count = orbit_enumerate(&s, x, x, r).unwrap().len();
            cases.push(OrbitCountCase {
                family: format!("cylinder {l}"),
                radius: r,
                count,
                injrad: iota,
            });
        }
    }
    let g2 = HyperbolicSurface::genus2_octagon();
    let iota = injectivity_radius(&g2, x).unwrap();
    for r in [2.0, 4.0, 6.0, 8.0] {
        let count = orbit_enumerate(&g2, x, x, r).unwrap().len();
        cases.push(OrbitCountCase {
            family: "genus 2".into(),
            radius: r,
            count,
            injrad: iota,
        });
    }
    for c in &cases {
        println!(
            "{:<14} R = {:>3}: {:>5} orbit points, injrad {:.4}",
            c.family, c.radius, c.count, c.injrad
        );
    }
    let fit = fit_orbit_constant(&cases);
    println!(
        "c2 = {:.4} fitted on {} cases, {} of {} held-out cases violated",
        fit.c2,
        fit.training.len(),
        fit.violations.len(),
        fit.held_out.len()
    );
}
