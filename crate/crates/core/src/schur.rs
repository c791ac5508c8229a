//! Schur polynomials `s_λ(p)` evaluated at a spectrum.
//!
//! Three independent routes are provided:
//!
//! * [`schur_polynomial`]: the Jacobi–Trudi determinant `det[h_{λ_i − i + j}]`
//!   with complete homogeneous polynomials from a dynamic program. Unlike the
//!   bialternant formula it has no Vandermonde denominator, so degenerate
//!   spectra are fine.
//! * [`schur_polynomial_ssyt`]: brute-force sum of monomials over semistandard
//!   tableaux.
//! * [`SchurTable`]: log-space branching rule `s_λ(x₁..x_k) = Σ_{μ ≺ λ}
//!   x_k^{|λ|−|μ|} s_μ(x₁..x_{k−1})`. Every term is non-negative, so it keeps full
//!   relative precision for large `N`, where the determinant loses digits to
//!   cancellation. Block weights are computed with this route.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::math::{ln_add_exp, ln_pow};
use crate::spectrum::Spectrum;
use crate::young::{semistandard_tableaux, YoungDiagram};

/// Complete homogeneous symmetric polynomials `h_0, …, h_kmax` at `x`.
pub fn complete_homogeneous(x: &[f64], kmax: usize) -> Vec<f64> {
    let mut h = vec![0.0; kmax + 1];
    h[0] = 1.0;
    // after processing variable x_i, h[k] = h_k(x_1..x_i)
    for &xi in x {
        for k in 1..=kmax {
            h[k] += xi * h[k - 1];
        }
    }
    h
}

/// `s_λ(p)` by the Jacobi–Trudi determinant.
///
/// Returns `0` when `λ` has more non-zero rows than the spectrum has positive
/// entries.
pub fn schur_polynomial(lambda: &YoungDiagram, spectrum: &Spectrum) -> f64 {
    schur_jacobi_trudi(lambda.rows(), spectrum.probs(), spectrum.rank())
}

fn schur_jacobi_trudi(rows: &[u32], x: &[f64], rank: usize) -> f64 {
    let shape: Vec<usize> = rows.iter().take_while(|&&r| r > 0).map(|&r| r as usize).collect();
    let l = shape.len();
    if l == 0 {
        return 1.0;
    }
    if l > rank {
        return 0.0;
    }
    let kmax = shape[0] + l;
    let h = complete_homogeneous(x, kmax);
    let hk = |k: isize| if k < 0 { 0.0 } else { h[k as usize] };
    let mut a: Vec<Vec<f64>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| hk(shape[i] as isize - i as isize + j as isize))
                .collect()
        })
        .collect();
    determinant(&mut a)
}

/// Determinant by Gaussian elimination with partial pivoting (destroys `a`).
fn determinant(a: &mut [Vec<f64>]) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap_or(c);
        if a[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            if f != 0.0 {
                let pivot = a[c].clone();
                for (x, v) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= f * v;
                }
            }
        }
    }
    det
}

/// `s_λ(x)` as a sum of `x^{content(T)}` over semistandard tableaux `T` with
/// entries in `1..=len(x)`.
pub fn schur_polynomial_ssyt(lambda: &YoungDiagram, x: &[f64]) -> f64 {
    semistandard_tableaux(lambda, x.len())
        .iter()
        .map(|t| {
            t.content(x.len())
                .iter()
                .zip(x)
                .map(|(&c, &xi)| xi.powi(c as i32))
                .product::<f64>()
        })
        .sum()
}

/// Memoised log-space evaluator of `ln s_λ(p)` for one spectrum.
#[derive(Debug, Clone)]
pub struct SchurTable {
    x: Vec<f64>,
    /// `levels[k]` caches `ln s_μ(x_1..x_{k+1})` keyed by the `k+1` rows of `μ`.
    levels: Vec<BTreeMap<Vec<u32>, f64>>,
}

impl SchurTable {
    pub fn new(spectrum: &Spectrum) -> Self {
        let x = spectrum.probs().to_vec();
        let levels = vec![BTreeMap::new(); x.len()];
        Self { x, levels }
    }

    /// `ln s_λ(p)`; `-inf` when the value is exactly zero.
    pub fn ln_value(&mut self, lambda: &YoungDiagram) -> f64 {
        let d = self.x.len();
        if lambda.depth() > d {
            return f64::NEG_INFINITY;
        }
        let mut rows = lambda.rows().to_vec();
        rows.resize(d, 0);
        self.ln_rec(&rows)
    }

    /// `s_λ(p)` (may underflow to zero for very large `N`).
    pub fn value(&mut self, lambda: &YoungDiagram) -> f64 {
        self.ln_value(lambda).exp()
    }

    fn ln_rec(&mut self, rows: &[u32]) -> f64 {
        let k = rows.len();
        if k == 1 {
            return ln_pow(self.x[0], rows[0] as f64);
        }
        if let Some(&v) = self.levels[k - 1].get(rows) {
            return v;
        }
        let xk = self.x[k - 1];
        let total: u32 = rows.iter().sum();
        let mut acc = f64::NEG_INFINITY;
        let mut mu = vec![0u32; k - 1];
        self.branch(rows, 0, &mut mu, total, xk, &mut acc);
        self.levels[k - 1].insert(rows.to_vec(), acc);
        acc
    }

    // enumerate μ with λ_{i} ≥ μ_i ≥ λ_{i+1}
    fn branch(&mut self, lam: &[u32], i: usize, mu: &mut Vec<u32>, total: u32, xk: f64, acc: &mut f64) {
        if i == mu.len() {
            let mu_size: u32 = mu.iter().sum();
            let w = ln_pow(xk, (total - mu_size) as f64);
            if w == f64::NEG_INFINITY {
                return;
            }
            let snapshot = mu.clone();
            let s = self.ln_rec(&snapshot);
            *acc = ln_add_exp(*acc, w + s);
            return;
        }
        for v in lam[i + 1]..=lam[i] {
            mu[i] = v;
            self.branch(lam, i + 1, mu, total, xk, acc);
        }
    }
}
