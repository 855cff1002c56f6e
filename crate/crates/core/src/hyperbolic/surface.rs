//! Fuchsian groups given by generator matrices: validation, the standard
//! genus-2 octagon group, hyperbolic cylinders and sampling.

use std::f64::consts::PI;

use nalgebra::{Complex, Matrix2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{distance, mobius, polar_point, HypError, Mat2, Point};

pub const DET_TOLERANCE: f64 = 1e-10;
pub const RELATOR_TOLERANCE: f64 = 1e-8;

/// Discrete torsion-free group acting on the upper half-plane.
///
/// Words are lists of signed 1-based generator indices (`-k` is the
/// inverse of generator `k`).
#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicSurface {
    pub label: Option<String>,
    generators: Vec<Mat2>,
    relator: Vec<i32>,
    /// Centre `o` of the fundamental domain used for pruning.
    pub center: Point,
    /// Circumradius of a Dirichlet domain about `center` whose side
    /// pairings are the generators; `0` for cyclic groups, whose orbit of
    /// `center` lies on the translation axis.
    pub domain_radius: f64,
    pub basepoint: Point,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Row-major `[a, b, c, d]` per generator.
    pub generators: Vec<[f64; 4]>,
    #[serde(default)]
    pub relator: Vec<i32>,
    #[serde(default = "default_i")]
    pub center: [f64; 2],
    #[serde(default)]
    pub domain_radius: f64,
    #[serde(default = "default_i")]
    pub basepoint: [f64; 2],
}

fn default_i() -> [f64; 2] {
    [0.0, 1.0]
}

fn op_norm(m: &Mat2) -> f64 {
    // largest singular value of a 2x2 matrix
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let s1 = a * a + b * b + c * c + d * d;
    let det = a * d - b * c;
    ((s1 + (s1 * s1 - 4.0 * det * det).max(0.0).sqrt()) / 2.0).sqrt()
}

fn point(p: [f64; 2]) -> Result<Point, HypError> {
    let z = Complex::new(p[0], p[1]);
    if p[1] > 0.0 && p[0].is_finite() && p[1].is_finite() {
        Ok(z)
    } else {
        Err(HypError::NotInUpperHalfPlane(z))
    }
}

impl HyperbolicSurface {
    pub fn new(
        label: Option<String>,
        generators: Vec<Mat2>,
        relator: Vec<i32>,
        center: Point,
        domain_radius: f64,
        basepoint: Point,
    ) -> Result<Self, HypError> {
        if generators.is_empty() {
            return Err(HypError::InvalidSurface("no generators".into()));
        }
        for (k, g) in generators.iter().enumerate() {
            let det = g.determinant();
            if (det - 1.0).abs() > DET_TOLERANCE {
                return Err(HypError::InvalidSurface(format!(
                    "generator {} has determinant {det}",
                    k + 1
                )));
            }
            if g.trace().abs() <= 2.0 {
                return Err(HypError::InvalidSurface(format!(
                    "generator {} is not hyperbolic",
                    k + 1
                )));
            }
        }
        for &l in &relator {
            if l == 0 || l.unsigned_abs() as usize > generators.len() {
                return Err(HypError::InvalidSurface(format!("relator letter {l} out of range")));
            }
        }
        if !(domain_radius >= 0.0 && domain_radius.is_finite()) {
            return Err(HypError::InvalidSurface(format!("domain radius {domain_radius}")));
        }
        if generators.len() > 1 && domain_radius == 0.0 {
            return Err(HypError::InvalidSurface(
                "non-cyclic groups need the circumradius of their Dirichlet domain".into(),
            ));
        }
        for z in [center, basepoint] {
            if z.im.is_nan() || z.im <= 0.0 {
                return Err(HypError::NotInUpperHalfPlane(z));
            }
        }
        let s = Self {
            label,
            generators,
            relator,
            center,
            domain_radius,
            basepoint,
        };
        if !s.relator.is_empty() {
            let r = s.word_matrix(&s.relator);
            let err = op_norm(&(r - Mat2::identity())).min(op_norm(&(r + Mat2::identity())));
            if err > RELATOR_TOLERANCE {
                return Err(HypError::InvalidSurface(format!(
                    "relator evaluates {err} away from the identity"
                )));
            }
        }
        Ok(s)
    }

    pub fn from_file(f: &SurfaceFile) -> Result<Self, HypError> {
        let gens = f
            .generators
            .iter()
            .map(|m| Matrix2::new(m[0], m[1], m[2], m[3]))
            .collect();
        Self::new(
            f.label.clone(),
            gens,
            f.relator.clone(),
            point(f.center)?,
            f.domain_radius,
            point(f.basepoint)?,
        )
    }

    pub fn to_file(&self) -> SurfaceFile {
        SurfaceFile {
            label: self.label.clone(),
            generators: self
                .generators
                .iter()
                .map(|m| [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]])
                .collect(),
            relator: self.relator.clone(),
            center: [self.center.re, self.center.im],
            domain_radius: self.domain_radius,
            basepoint: [self.basepoint.re, self.basepoint.im],
        }
    }

    /// Cyclic group generated by `diag(e^{l/2}, e^{-l/2})`, translation
    /// length `l` along the imaginary axis.
    pub fn cylinder(l: f64) -> Result<Self, HypError> {
        let g = Matrix2::new((l / 2.0).exp(), 0.0, 0.0, (-l / 2.0).exp());
        Self::new(
            Some(format!("cylinder l={l}")),
            vec![g],
            vec![],
            Complex::i(),
            0.0,
            Complex::i(),
        )
    }

    /// Regular-octagon genus-2 group: `g_k` translates along the direction
    /// `k pi/4` (seen from `i`) by twice the octagon's inradius.
    pub fn genus2_octagon() -> Self {
        let l = 2.0 * (1.0 + 2f64.sqrt()).acosh();
        let c = Complex::new((l / 2.0).cosh(), 0.0);
        let s = Complex::new((l / 2.0).sinh(), 0.0);
        let one = Complex::new(1.0, 0.0);
        let i = Complex::i();
        // Cayley transform disk -> upper half-plane and its inverse
        let cay = nalgebra::Matrix2::new(i, i, -one, one);
        let cay_inv = cay.try_inverse().expect("invertible");
        let gens = (0..4)
            .map(|k| {
                let th = k as f64 * PI / 4.0;
                let zero = Complex::new(0.0, 0.0);
                let rot = |a: f64| {
                    nalgebra::Matrix2::new(
                        Complex::from_polar(1.0, a / 2.0),
                        zero,
                        zero,
                        Complex::from_polar(1.0, -a / 2.0),
                    )
                };
                let disk = rot(th) * nalgebra::Matrix2::new(c, s, s, c) * rot(-th);
                // conjugating SU(1,1) by the Cayley transform lands in SL(2,R)
                let m = cay * disk * cay_inv;
                debug_assert!(m.iter().all(|x| x.im.abs() < 1e-9));
                Matrix2::from_fn(|r, col| m[(r, col)].re)
            })
            .collect();
        let domain_radius = (3.0 + 2.0 * 2f64.sqrt()).acosh();
        Self::new(
            Some("genus-2 regular octagon".into()),
            gens,
            vec![1, -2, 3, -4, -1, 2, -3, 4],
            Complex::i(),
            domain_radius,
            Complex::i(),
        )
        .expect("octagon group is valid")
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    pub fn relator(&self) -> &[i32] {
        &self.relator
    }

    pub fn letter_matrix(&self, l: i32) -> Mat2 {
        let g = self.generators[l.unsigned_abs() as usize - 1];
        if l > 0 {
            g
        } else {
            Matrix2::new(g[(1, 1)], -g[(0, 1)], -g[(1, 0)], g[(0, 0)])
        }
    }

    pub fn word_matrix(&self, word: &[i32]) -> Mat2 {
        word.iter()
            .fold(Mat2::identity(), |acc, &l| acc * self.letter_matrix(l))
    }

    /// All letters `1..=n` and their inverses.
    pub fn letters(&self) -> Vec<i32> {
        let n = self.generators.len() as i32;
        (1..=n).flat_map(|k| [k, -k]).collect()
    }

    pub fn is_closed(&self) -> bool {
        !self.relator.is_empty()
    }

    /// Genus read off a single surface relator of length `4g`.
    pub fn genus(&self) -> Option<usize> {
        (self.is_closed() && self.relator.len().is_multiple_of(4)).then_some(self.relator.len() / 4)
    }

    /// Gauss–Bonnet area `4 pi (g - 1)`; `None` for groups of infinite covolume.
    pub fn area(&self) -> Option<f64> {
        self.genus().map(|g| 4.0 * PI * (g as f64 - 1.0))
    }

    /// Whether `z` lies in the Dirichlet domain cut out by the generators.
    pub fn in_domain(&self, z: Point) -> bool {
        let d0 = distance(z, self.center);
        self.letters()
            .iter()
            .all(|&l| d0 <= distance(z, mobius(&self.letter_matrix(l), self.center)) + 1e-12)
    }

    /// Seeded sample points. Closed surfaces: uniform by area over the
    /// Dirichlet domain. Cyclic groups: distance from the axis uniform in
    /// `[0, max_offset]`, position along the axis uniform over one period.
    pub fn sample_points(&self, n: usize, seed: u64, max_offset: f64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        if self.is_closed() && self.domain_radius > 0.0 {
            let ch = self.domain_radius.cosh();
            while out.len() < n {
                let r = (1.0 + rng.random::<f64>() * (ch - 1.0)).acosh();
                let theta = rng.random::<f64>() * 2.0 * PI;
                let z = self.relative_to_center(polar_point(r, theta));
                if self.in_domain(z) {
                    out.push(z);
                }
            }
        } else {
            let g = self.generators[0];
            let l = 2.0 * (g.trace().abs() / 2.0).acosh();
            while out.len() < n {
                let offset = rng.random::<f64>() * max_offset;
                let along = rng.random::<f64>() * l;
                let side = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                // distance `offset` from the imaginary axis at height e^along
                let z = Complex::new(side * offset.tanh(), 1.0 / offset.cosh()) * along.exp();
                out.push(z);
            }
        }
        out
    }

    /// Moves a point given relative to `i` to the same position relative to
    /// `center` (translation along the horizontal and vertical directions).
    fn relative_to_center(&self, z: Point) -> Point {
        Complex::new(self.center.re + self.center.im * z.re, self.center.im * z.im)
    }
}
