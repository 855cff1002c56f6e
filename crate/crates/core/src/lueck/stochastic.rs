//! Hutchinson estimates of `tr exp(-tL)` with a Chebyshev expansion of the
//! exponential on `[0, b]`, `b` the Gershgorin bound of `L`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::sparse::IntegerSparseMatrix;

use super::LueckError;

/// Uniform error target for the default polynomial degree.
pub const DEFAULT_UNIFORM_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StochasticTrace {
    pub estimate: f64,
    pub std_error: f64,
    /// Bound on `|tr p(L) - tr exp(-tL)|` including a rounding allowance.
    pub bias_bound: f64,
    pub poly_degree: usize,
    pub probes: usize,
}

/// `e^{-s} I_j(s)` for `j = 0..=jmax` by Miller's backward recurrence,
/// normalized with `I_0 + 2 sum_j I_j = e^s`.
fn scaled_bessel_i(s: f64, jmax: usize) -> Vec<f64> {
    let mut out = vec![0.0; jmax + 1];
    if s == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let start = jmax + 20 + (40.0 * (s + jmax as f64)).sqrt() as usize;
    let (mut hi, mut cur) = (0.0f64, 1e-300f64);
    let mut vals = vec![0.0; start + 1];
    vals[start] = cur;
    for j in (1..=start).rev() {
        let lo = hi + (2.0 * j as f64 / s) * cur;
        hi = cur;
        cur = lo;
        vals[j - 1] = cur;
        if cur > 1e250 {
            for v in vals[j - 1..].iter_mut() {
                *v *= 1e-250;
            }
            hi *= 1e-250;
            cur *= 1e-250;
        }
    }
    let norm = vals[0] + 2.0 * vals[1..].iter().sum::<f64>();
    for (o, v) in out.iter_mut().zip(&vals) {
        *o = v / norm;
    }
    out
}

/// Chebyshev coefficients of `exp(-s(1 + y))` on `[-1, 1]` up to `degree`,
/// and a bound on the sum of the absolute values of the dropped ones.
fn chebyshev_exp(s: f64, degree: usize) -> (Vec<f64>, f64) {
    let jmax = degree.max((s + 10.0 * s.sqrt()) as usize) + 60;
    let scaled = scaled_bessel_i(s, jmax);
    let coeffs = (0..=degree)
        .map(|j| {
            if j == 0 {
                scaled[0]
            } else {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                2.0 * sign * scaled[j]
            }
        })
        .collect();
    let q = s / (2.0 * (jmax + 1) as f64);
    let remainder = 2.0 * scaled[jmax] * q / (1.0 - q);
    let tail = 2.0 * scaled[degree + 1..].iter().sum::<f64>() + remainder;
    (coeffs, tail)
}

/// Smallest degree whose truncation error is at most `tol` uniformly.
pub fn chebyshev_degree_for(s: f64, tol: f64) -> usize {
    let mut d = 0;
    loop {
        if chebyshev_exp(s, d).1 <= tol {
            return d;
        }
        d = if d < 16 { d + 1 } else { d + d / 8 };
    }
}

pub fn heat_trace_stochastic(
    l: &IntegerSparseMatrix,
    t: f64,
    probes: usize,
    poly_degree: Option<usize>,
    seed: u64,
) -> Result<StochasticTrace, LueckError> {
    if !l.is_symmetric() {
        return Err(LueckError::NotSymmetric);
    }
    if probes < 2 {
        return Err(LueckError::InvalidProbeCount(probes));
    }
    let n = l.rows();
    let b = l.gershgorin_bound();
    if b == 0.0 || n == 0 {
        return Ok(StochasticTrace {
            estimate: n as f64,
            std_error: 0.0,
            bias_bound: 0.0,
            poly_degree: 0,
            probes,
        });
    }
    let s = t * b / 2.0;
    let degree = poly_degree.unwrap_or_else(|| chebyshev_degree_for(s, DEFAULT_UNIFORM_TOLERANCE));
    let (coeffs, tail) = chebyshev_exp(s, degree);
    let csr = l.to_csr();
    let scale = 2.0 / b;

    let samples: Vec<f64> = (0..probes)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let z: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
            let mut b1 = vec![0.0; n];
            let mut b2 = vec![0.0; n];
            let mut lv = vec![0.0; n];
            // shifted operator v -> (2/b) L v - v
            let apply = |v: &[f64], out: &mut [f64]| {
                csr.mul_vec(v, out);
                for (o, x) in out.iter_mut().zip(v) {
                    *o = scale * *o - x;
                }
            };
            for &a in coeffs[1..].iter().rev() {
                apply(&b1, &mut lv);
                for i in 0..n {
                    let next = a * z[i] + 2.0 * lv[i] - b2[i];
                    b2[i] = b1[i];
                    b1[i] = next;
                }
            }
            apply(&b1, &mut lv);
            (0..n).map(|i| z[i] * (coeffs[0] * z[i] + lv[i] - b2[i])).sum::<f64>()
        })
        .collect();

    let p = probes as f64;
    let mean = samples.iter().sum::<f64>() / p;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (p - 1.0);
    let rounding = 16.0 * f64::EPSILON * n as f64 * (degree + 1) as f64;
    Ok(StochasticTrace {
        estimate: mean,
        std_error: (var / p).sqrt(),
        bias_bound: n as f64 * tail + rounding,
        poly_degree: degree,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::models;
    use crate::lueck::heat_trace_exact;

    #[test]
    fn bessel_scaling_matches_series() {
        // e^{-1} I_0(1) and e^{-1} I_1(1)
        let v = scaled_bessel_i(1.0, 5);
        assert!((v[0] - 1.266_065_877_752_008_4 * (-1.0f64).exp()).abs() < 1e-15);
        assert!((v[1] - 0.565_159_103_992_485 * (-1.0f64).exp()).abs() < 1e-15);
        let big = scaled_bessel_i(400.0, 500);
        assert!(big.iter().all(|x| x.is_finite() && *x >= 0.0));
    }

    #[test]
    fn chebyshev_series_is_uniformly_accurate() {
        for s in [0.3, 4.0, 37.5] {
            let d = chebyshev_degree_for(s, 1e-8);
            let (c, tail) = chebyshev_exp(s, d);
            assert!(tail <= 1e-8);
            for i in 0..=200 {
                let y = -1.0 + 2.0 * i as f64 / 200.0;
                let th = y.acos();
                let approx: f64 = c.iter().enumerate().map(|(j, a)| a * (j as f64 * th).cos()).sum();
                assert!((approx - (-s * (1.0 + y)).exp()).abs() <= tail + 1e-14);
            }
        }
    }

    #[test]
    fn zero_matrix_is_exact() {
        let r = heat_trace_stochastic(&IntegerSparseMatrix::zeros(7, 7), 2.0, 10, None, 1).unwrap();
        assert_eq!((r.estimate, r.std_error), (7.0, 0.0));
    }

    #[test]
    fn deterministic_and_close_to_exact() {
        let l = models::torus7().hodge_laplacian(1).unwrap();
        let a = heat_trace_stochastic(&l, 0.5, 64, None, 99).unwrap();
        let b = heat_trace_stochastic(&l, 0.5, 64, None, 99).unwrap();
        assert_eq!(a, b);
        let exact = heat_trace_exact(&l, 0.5).unwrap();
        assert!((a.estimate - exact).abs() <= 4.0 * a.std_error + a.bias_bound);
        assert_eq!(
            heat_trace_stochastic(&l, 0.5, 1, None, 0).unwrap_err(),
            LueckError::InvalidProbeCount(1)
        );
    }
}
