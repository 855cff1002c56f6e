//! Exact matrix rank over the rationals.
//!
//! A modular prepass computes the rank modulo a few word-size primes; each of
//! those is a lower bound for the rational rank. When the bound already equals
//! `min(rows, cols)` the answer is certified and elimination is skipped.
//! Otherwise a fraction-free column reduction over the integers confirms the
//! rank, first in checked `i64` arithmetic and, on overflow, in `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::sparse::IntegerSparseMatrix;

const PREPASS_PRIMES: [u64; 3] = [2_147_483_629, 2_147_483_587, 2_147_483_579];

/// Rank of the matrix over the rationals.
pub fn rational_rank(m: &IntegerSparseMatrix) -> usize {
    let full = m.rows().min(m.cols());
    if full == 0 || m.is_zero() {
        return 0;
    }
    let lower = PREPASS_PRIMES
        .par_iter()
        .map(|&p| rank_mod_p(m, p))
        .collect::<Vec<_>>()
        .into_iter()
        .max()
        .unwrap_or(0);
    if lower == full {
        return full;
    }
    let exact = match integer_column_rank::<i64>(m) {
        Some(r) => r,
        None => integer_column_rank::<BigInt>(m).expect("bigint reduction cannot overflow"),
    };
    debug_assert!(exact >= lower, "modular rank {lower} exceeds rational rank {exact}");
    exact
}

/// Rank of the matrix reduced modulo the prime `p`.
pub fn rank_mod_p(m: &IntegerSparseMatrix, p: u64) -> usize {
    let cols: Vec<Vec<(usize, u64)>> = m
        .col_lists()
        .into_iter()
        .map(|c| {
            c.into_iter()
                .filter_map(|(r, v)| {
                    let x = v.rem_euclid(p as i64) as u64;
                    (x != 0).then_some((r, x))
                })
                .collect()
        })
        .collect();
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; m.rows()];
    let mut rank = 0;
    for mut col in cols {
        while let Some(&(low, lv)) = col.last() {
            match &pivots[low] {
                Some(piv) => {
                    // piv is normalized so its low entry is 1
                    col = axpy_mod(&col, piv, p - lv, p);
                }
                None => {
                    let inv = inv_mod(lv, p);
                    let normalized = col.iter().map(|&(r, v)| (r, mul_mod(v, inv, p))).collect();
                    pivots[low] = Some(normalized);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// `x + s * y` over sorted sparse vectors mod p.
fn axpy_mod(x: &[(usize, u64)], y: &[(usize, u64)], s: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, mul_mod(y[j].1, s, p)));
            j += 1;
        } else {
            let v = (x[i].1 + mul_mod(y[j].1, s, p)) % p;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Integer arithmetic the fraction-free reduction runs on.
trait ExactInt: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `a * x - b * y`, `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl ExactInt for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// Column reduction keyed on the lowest nonzero row; `None` on overflow.
fn integer_column_rank<T: ExactInt>(m: &IntegerSparseMatrix) -> Option<usize> {
    let mut pivots: Vec<Option<Vec<(usize, T)>>> = vec![None; m.rows()];
    let mut rank = 0;
    for col in m.col_lists() {
        let mut col: Vec<(usize, T)> = col.into_iter().map(|(r, v)| (r, T::from_i64(v))).collect();
        while let Some((low, lv)) = col.last().cloned() {
            match &pivots[low] {
                Some(piv) => {
                    let pv = piv.last().expect("pivot column is nonempty").1.clone();
                    col = combine(&col, &lv, piv, &pv)?;
                }
                None => {
                    pivots[low] = Some(col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// `pv * x - xv * y`, divided by the gcd of the surviving entries.
fn combine<T: ExactInt>(x: &[(usize, T)], xv: &T, y: &[(usize, T)], pv: &T) -> Option<Vec<(usize, T)>> {
    let zero = T::from_i64(0);
    let mut out: Vec<(usize, T)> = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (row, a, b) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            (x[i - 1].0, &x[i - 1].1, &zero)
        } else if i >= x.len() || y[j].0 < x[i].0 {
            j += 1;
            (y[j - 1].0, &zero, &y[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, &x[i - 1].1, &y[j - 1].1)
        };
        let v = T::cross(pv, a, xv, b)?;
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    let mut g = zero;
    for (_, v) in &out {
        g = g.gcd(v);
        if g.is_unit() {
            return Some(out);
        }
    }
    if !g.is_zero() {
        for (_, v) in out.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
    Some(out)
}

/// Basis of the right nullspace `{x : A x = 0}` over `F_p`, for a dense
/// matrix with entries already reduced mod `p`.
pub fn nullspace_mod_p(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..a.len()).find(|&k| a[k][c] != 0) else {
            continue;
        };
        a.swap(r, k);
        let inv = inv_mod(a[r][c], p);
        for v in a[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + p - mul_mod(f, pv, p)) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u64; ncols];
            x[f] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = (p - a[i][f]) % p;
            }
            x
        })
        .collect()
}

/// Basis of the rational nullspace of an integer matrix, each vector scaled
/// to a primitive integer vector.
pub fn integer_nullspace(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..a.len()).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &f * pv;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); ncols];
            x[f] = BigRational::one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = -a[i][f].clone();
            }
            let lcm = x.iter().fold(BigInt::one(), |l, q| Integer::lcm(&l, q.denom()));
            let ints: Vec<BigInt> = x.iter().map(|q| (q * &lcm).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |g, v| Integer::gcd(&g, v));
            ints.iter()
                .map(|v| i64::try_from(v / &g).expect("nullspace entry fits in i64"))
                .collect()
        })
        .collect()
}
