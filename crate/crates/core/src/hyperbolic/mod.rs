//! Scalar heat kernel of the hyperbolic plane and its quotients by Fuchsian
//! groups, in the upper half-plane with curvature `-1`.

pub mod dual;
pub mod images;
pub mod kernel;
pub mod orbit;
pub mod quad;
pub mod surface;

use nalgebra::{Complex, Matrix2};
use thiserror::Error;

pub use dual::{compact_dual_entry, compact_dual_l2_betti, genus_limit_check, DualSpaceEntry, GenusLimitRow};
pub use images::{
    deviation_vs_injrad, surface_heat_diagonal, surface_thin_part, DeviationRow, DeviationTable, ImagesConfig,
    KernelValue, SurfaceThinPart,
};
pub use kernel::{fit_gaussian_constant, h2_heat_kernel, GaussianFit, HeatKernel};
pub use orbit::{fit_orbit_constant, injectivity_radius, orbit_enumerate, OrbitCountCase, OrbitElement, OrbitFit};
pub use surface::{HyperbolicSurface, SurfaceFile};

pub type Point = Complex<f64>;
pub type Mat2 = Matrix2<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HypError {
    #[error("t = {t} outside the window (0, {m}]")]
    TOutOfWindow { t: f64, m: f64 },
    #[error("empty window: {0}")]
    WindowEmpty(String),
    #[error("pruned prefix leads to an element within the radius (word {word:?})")]
    PruningUnsound { word: Vec<i32> },
    #[error("truncation error {target} not reachable within radius {max_radius}")]
    TruncationUnreachable { target: f64, max_radius: f64 },
    #[error("unsupported space {0}")]
    UnsupportedSpace(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("point {0} is not in the upper half-plane")]
    NotInUpperHalfPlane(Point),
}

/// Hyperbolic distance in the upper half-plane.
pub fn distance(z: Point, w: Point) -> f64 {
    2.0 * ((z - w).norm() / (2.0 * (z.im * w.im).sqrt())).asinh()
}

/// Action of a real `2x2` matrix by Möbius transformation.
pub fn mobius(m: &Mat2, z: Point) -> Point {
    (z * m[(0, 0)] + m[(0, 1)]) / (z * m[(1, 0)] + m[(1, 1)])
}

/// Point at distance `r` from `i` in direction `theta` (angle measured in
/// the disk model at the centre).
pub fn polar_point(r: f64, theta: f64) -> Point {
    let w = Complex::from_polar((r / 2.0).tanh(), theta);
    cayley(w)
}

/// Disk model to upper half-plane, `0 -> i`.
pub fn cayley(w: Complex<f64>) -> Point {
    let one = Complex::new(1.0, 0.0);
    Complex::<f64>::i() * (one + w) / (one - w)
}
