//! Orbit enumeration by breadth-first word search with certified pruning.
//!
//! Let `o` be the domain centre, `rho` the domain circumradius. A geodesic
//! path `o -> x -> g y -> g o` crosses the tiles `w_k D` of the prefixes
//! `w_k` of some word for `g` in the side pairings, and each tile centre is
//! within `rho` of the path, so
//! `d(x, w_k o) <= rho + max(d(o, x), R + d_y)` whenever `d(x, g y) <= R`,
//! where `d_y = 0` for `y` in `D` and `d(o, y)` otherwise. For a cyclic
//! group `o` sits on the axis, `rho = 0`, and the same bound follows from
//! convexity of the distance to the axis points `g^j o`.

use std::collections::HashMap;

use serde::Serialize;

use super::surface::HyperbolicSurface;
use super::{distance, mobius, HypError, Mat2, Point};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitElement {
    pub word: Vec<i32>,
    #[serde(skip)]
    pub matrix: Mat2,
    #[serde(skip)]
    pub image: Point,
    pub distance: f64,
}

/// Cell size for bucketing orbit points of the centre.
const BUCKET: f64 = 1e-3;
const SAME_POINT: f64 = 1e-7;

/// Group elements keyed by the image of the centre; torsion-free groups
/// act freely, so that image determines the element.
struct ElementSet {
    center: Point,
    buckets: HashMap<(i64, i64), Vec<(Point, Mat2)>>,
}

impl ElementSet {
    fn new(center: Point) -> Self {
        Self {
            center,
            buckets: HashMap::new(),
        }
    }

    /// Height bucket `a` has `im` in `[e^{aB}, e^{(a+1)B})`; the horizontal
    /// cell width is tied to `a`, not to `im` itself, so nearby points land in
    /// adjacent cells even far from the imaginary axis.
    fn height(z: Point) -> i64 {
        (z.im.ln() / BUCKET).floor() as i64
    }

    fn column(z: Point, a: i64) -> i64 {
        (z.re / (BUCKET * (a as f64 * BUCKET).exp())).floor() as i64
    }

    fn same_up_to_sign(a: &Mat2, b: &Mat2) -> bool {
        let tol = 1e-6 * a.norm().max(1.0);
        (a - b).norm() < tol || (a + b).norm() < tol
    }

    fn contains(&self, m: &Mat2) -> bool {
        let z = mobius(m, self.center);
        let a = Self::height(z);
        for ka in a - 1..=a + 1 {
            let b = Self::column(z, ka);
            for kb in b - 1..=b + 1 {
                if let Some(v) = self.buckets.get(&(ka, kb)) {
                    if v.iter()
                        .any(|(w, n)| distance(*w, z) < SAME_POINT && Self::same_up_to_sign(m, n))
                    {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Inserts unless present; returns whether it was new.
    fn insert(&mut self, m: Mat2) -> bool {
        if self.contains(&m) {
            return false;
        }
        let z = mobius(&m, self.center);
        let a = Self::height(z);
        self.buckets.entry((a, Self::column(z, a))).or_default().push((z, m));
        true
    }
}

fn check_point(z: Point) -> Result<(), HypError> {
    if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(HypError::NotInUpperHalfPlane(z))
    }
}

/// `d(z, w) <= r` tested as `|z - w|^2 / (Im z Im w) <= 2 (cosh r - 1)`.
#[derive(Clone, Copy)]
struct Within {
    z: Point,
    threshold: f64,
}

impl Within {
    fn new(z: Point, r: f64) -> Self {
        Self {
            z,
            threshold: 2.0 * (r.cosh() - 1.0),
        }
    }

    fn test(&self, w: Point) -> bool {
        (self.z - w).norm_sqr() / (self.z.im * w.im) <= self.threshold
    }
}

struct Node {
    parent: u32,
    letter: i32,
    matrix: Mat2,
}

fn word_of(nodes: &[Node], mut i: usize) -> Vec<i32> {
    let mut w = Vec::new();
    while i != 0 {
        w.push(nodes[i].letter);
        i = nodes[i].parent as usize;
    }
    w.reverse();
    w
}

/// Every `g` with `d(x, g y) <= r`, each once, sorted by distance.
pub fn orbit_enumerate(s: &HyperbolicSurface, x: Point, y: Point, r: f64) -> Result<Vec<OrbitElement>, HypError> {
    check_point(x)?;
    check_point(y)?;
    let o = s.center;
    let d_y = if s.domain_radius > 0.0 && s.in_domain(y) {
        0.0
    } else {
        distance(o, y)
    };
    let bound = s.domain_radius + distance(o, x).max(r + d_y) + 1e-9;
    let keep = Within::new(x, bound);
    // slack keeps boundary elements from flickering between the two tests
    let hit = Within::new(x, r + 1e-12);
    let letters = s.letters();
    let letter_mats: Vec<Mat2> = letters.iter().map(|&l| s.letter_matrix(l)).collect();

    let mut seen = ElementSet::new(o);
    seen.insert(Mat2::identity());
    let mut nodes = vec![Node {
        parent: 0,
        letter: 0,
        matrix: Mat2::identity(),
    }];
    let mut found = Vec::new();
    let mut pruned: Vec<(i32, Mat2)> = Vec::new();
    let mut head = 0;
    while head < nodes.len() {
        let m = nodes[head].matrix;
        let last = nodes[head].letter;
        let gy = mobius(&m, y);
        if hit.test(gy) {
            found.push(head);
        }
        for (&l, lm) in letters.iter().zip(&letter_mats) {
            if last == -l && head != 0 {
                continue;
            }
            let child = m * lm;
            if !keep.test(mobius(&child, o)) {
                pruned.push((l, child));
                continue;
            }
            if seen.insert(child) {
                nodes.push(Node {
                    parent: head as u32,
                    letter: l,
                    matrix: child,
                });
            }
        }
        head += 1;
    }

    // pruned frontier re-checked two letters deep: images of y under the
    // reduced words of length <= 2 after each pruned element
    let mut tails: Vec<(i32, i32, Point)> = vec![(0, 0, y)];
    for (&a, am) in letters.iter().zip(&letter_mats) {
        tails.push((a, 0, mobius(am, y)));
        for (&b, bm) in letters.iter().zip(&letter_mats) {
            if b != -a {
                tails.push((a, b, mobius(&(am * bm), y)));
            }
        }
    }
    for (l, g) in &pruned {
        for &(a, b, w) in &tails {
            if a == -l || !hit.test(mobius(g, w)) {
                continue;
            }
            let mut h = *g;
            for c in [a, b] {
                if c != 0 {
                    h *= s.letter_matrix(c);
                }
            }
            if !seen.contains(&h) {
                let word = [*l, a, b].into_iter().filter(|&c| c != 0).collect();
                return Err(HypError::PruningUnsound { word });
            }
        }
    }
    let mut out: Vec<OrbitElement> = found
        .into_iter()
        .map(|i| {
            let image = mobius(&nodes[i].matrix, y);
            OrbitElement {
                word: word_of(&nodes, i),
                matrix: nodes[i].matrix,
                image,
                distance: distance(x, image).min(r),
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.distance
            .total_cmp(&b.distance)
            .then_with(|| a.word.len().cmp(&b.word.len()))
    });
    Ok(out)
}

/// Half the minimal displacement `inf_{g != 1} d(x, g x)`.
pub fn injectivity_radius(s: &HyperbolicSurface, x: Point) -> Result<f64, HypError> {
    let mut r = 1.0;
    loop {
        let orbit = orbit_enumerate(s, x, x, r)?;
        if let Some(e) = orbit.iter().find(|e| !e.word.is_empty()) {
            return Ok(e.distance / 2.0);
        }
        r *= 2.0;
        if r > 64.0 {
            return Err(HypError::InvalidSurface(
                "no displacement found within radius 64".into(),
            ));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitCountCase {
    pub family: String,
    pub radius: f64,
    pub count: usize,
    pub injrad: f64,
}

impl OrbitCountCase {
    /// Smallest `c` with `count <= c e^{c R} injrad^{-2}`.
    pub fn required_constant(&self) -> f64 {
        let target = self.count as f64 * self.injrad * self.injrad;
        let holds = |c: f64| c * (c * self.radius).exp() >= target;
        let (mut lo, mut hi) = (0.0, 1.0);
        while !holds(hi) {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if holds(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    pub fn satisfied_by(&self, c2: f64) -> bool {
        self.count as f64 <= c2 * (c2 * self.radius).exp() / (self.injrad * self.injrad)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitFit {
    pub c2: f64,
    pub training: Vec<usize>,
    pub held_out: Vec<usize>,
    /// Held-out cases the fitted constant fails.
    pub violations: Vec<usize>,
}

/// Fits `c2` on half the cases and tests the other half. Within each
/// family, cases alternate by decreasing radius starting with training, so
/// the largest radius of every family is fitted rather than extrapolated.
pub fn fit_orbit_constant(cases: &[OrbitCountCase]) -> OrbitFit {
    let mut order: Vec<usize> = (0..cases.len()).collect();
    order.sort_by(|&a, &b| {
        cases[a]
            .family
            .cmp(&cases[b].family)
            .then(cases[b].radius.total_cmp(&cases[a].radius))
    });
    let (mut training, mut held_out) = (Vec::new(), Vec::new());
    for (pos, &i) in order.iter().enumerate() {
        let rank = order[..pos]
            .iter()
            .filter(|&&j| cases[j].family == cases[i].family)
            .count();
        if rank % 2 == 0 {
            training.push(i);
        } else {
            held_out.push(i);
        }
    }
    let c2 = training
        .iter()
        .map(|&i| cases[i].required_constant())
        .fold(0.0, f64::max);
    let violations = held_out
        .iter()
        .copied()
        .filter(|&i| !cases[i].satisfied_by(c2))
        .collect();
    OrbitFit {
        c2,
        training,
        held_out,
        violations,
    }
}
