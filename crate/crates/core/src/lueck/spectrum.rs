//! Exact heat traces from a dense symmetric eigensolve.

use crate::complex::sparse::IntegerSparseMatrix;

use super::LueckError;

pub const DEFAULT_EXACT_CAP: usize = 3000;

/// Dimension cap for dense eigensolves, overridable through `LLB_EXACT_CAP`.
pub fn exact_cap() -> usize {
    std::env::var("LLB_EXACT_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_EXACT_CAP)
}

/// Eigenvalues of an integer PSD matrix, computed once and reused across `t`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn of(l: &IntegerSparseMatrix) -> Result<Self, LueckError> {
        Self::with_cap(l, exact_cap())
    }

    pub fn with_cap(l: &IntegerSparseMatrix, cap: usize) -> Result<Self, LueckError> {
        if !l.is_symmetric() {
            return Err(LueckError::NotSymmetric);
        }
        let n = l.rows();
        if n > cap {
            return Err(LueckError::TooLargeForExact { dim: n, cap });
        }
        if n == 0 {
            return Ok(Self { eigenvalues: vec![] });
        }
        // PSD by construction: anything inside the solver's backward error
        // around zero is a kernel vector.
        let noise = 8.0 * f64::EPSILON * n as f64 * l.gershgorin_bound().max(1.0);
        let mut eigenvalues: Vec<f64> = l
            .to_dense_f64()
            .symmetric_eigenvalues()
            .iter()
            .map(|&x| if x <= noise { 0.0 } else { x })
            .collect();
        eigenvalues.sort_by(f64::total_cmp);
        Ok(Self { eigenvalues })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.eigenvalues.iter().filter(|&&x| x == 0.0).count()
    }

    /// `sum_i exp(-t lambda_i)`, summed from the largest eigenvalue down.
    pub fn heat_trace(&self, t: f64) -> f64 {
        self.eigenvalues.iter().rev().map(|&x| (-t * x).exp()).sum()
    }
}

pub fn heat_trace_exact(l: &IntegerSparseMatrix, t: f64) -> Result<f64, LueckError> {
    Ok(Spectrum::of(l)?.heat_trace(t))
}
