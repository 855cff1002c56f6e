//! Exact Betti numbers of the named complexes, checked against the kernel
//! dimension of the Hodge Laplacian.

use llb::complex::models;
use llb::lueck::Spectrum;

fn main() {
    let corpus = [
        ("edge", models::edge()),
        ("circle", models::triangle_boundary()),
        ("rose_2", models::rose(2)),
        ("octahedron", models::octahedron()),
        ("torus", models::torus7()),
        ("genus 2", models::genus2()),
    ];
    println!("{:<12} {:>14} {:>5} {:>16}", "complex", "cells", "chi", "betti");
    for (name, k) in &corpus {
        let betti = k.betti_numbers();
        for (d, &b) in betti.values.iter().enumerate() {
            let lap = k.hodge_laplacian(d).expect("degree in range");
            let spec = Spectrum::of(&lap).expect("small enough for a dense solve");
            assert_eq!(spec.kernel_dim(), b, "{name}: Laplacian kernel disagrees in degree {d}");
        }
        println!(
            "{:<12} {:>14} {:>5} {:>16}",
            name,
            format!("{:?}", k.cell_counts()),
            k.euler_characteristic(),
            format!("{:?}", betti.values)
        );
    }
}
