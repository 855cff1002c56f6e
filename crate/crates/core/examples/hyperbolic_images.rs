//! Heat kernel of the hyperbolic plane and the method of images on a
//! cylinder and a closed genus-2 surface.

use llb::hyperbolic::{
    deviation_vs_injrad, fit_gaussian_constant, h2_heat_kernel, surface_heat_diagonal, HyperbolicSurface, ImagesConfig,
    Point,
};

fn main() {
    for t in [0.1, 1.0, 5.0] {
        println!("p_{t}(0) = {:.10}", h2_heat_kernel(0.0, t).unwrap());
    }
    let fit = fit_gaussian_constant(0.05, 5.0, 20.0, 40, 81).unwrap();
    println!("Gaussian constant on t in [0.05, 5], d <= 20: c1 = {:.4}", fit.c1);

    let cfg = ImagesConfig::default();
    let g2 = HyperbolicSurface::genus2_octagon();
    let v = surface_heat_diagonal(&g2, Point::new(0.0, 1.0), 1.0, 1e-8, &cfg).unwrap();
    println!(
        "genus 2, x = i, t = 1: K = {:.10} (+- {:.1e}, {} images, injrad {:.4})",
        v.value, v.truncation_bound, v.images_used, v.injrad
    );

    for l in [0.5, 1.0, 2.0] {
        let cyl = HyperbolicSurface::cylinder(l).unwrap();
        let points = cyl.sample_points(20, 1, 4.0);
        let tables = deviation_vs_injrad(&cyl, &points, &[0.25, 1.0], 1e-8, &cfg).unwrap();
        for tab in &tables {
            println!(
                "cylinder l = {l}, t = {}: max deviation * injrad^2 = {:.4}",
                tab.t, tab.empirical_c
            );
        }
    }
}
