//! Dense complex matrices and a cyclic Jacobi eigensolver for Hermitian input.
//!
//! Sizes here are small (a block is at most `N + 1` wide for qubits, the dense
//! oracle at most a few hundred), so plain row-major storage is enough.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{param_err, Error, Result};

pub type C64 = Complex64;

/// Convergence threshold on the off-diagonal Frobenius norm (relative to
/// `max(1, ‖A‖_F)`).
pub const JACOBI_TOLERANCE: f64 = 1e-13;
/// Hard cap on full Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C64::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; `data.len()` must be a square.
    pub fn from_rows(n: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(param_err!("expected {} entries, got {}", n * n, data.len()));
        }
        Ok(Self { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        assert_eq!(n, other.n, "matmul size mismatch");
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.n, other.n);
        let n = a * b;
        let mut out = Self::zeros(n);
        for i in 0..a {
            for j in 0..a {
                let s = self[(i, j)];
                if s.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out[(i * b + k, j * b + l)] = s * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.n;
        (0..n).all(|i| (i..n).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol))
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

/// A complex matrix known to be Hermitian within `1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    pub const TOLERANCE: f64 = 1e-12;

    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_hermitian(Self::TOLERANCE) {
            return Err(param_err!("matrix is not Hermitian"));
        }
        Ok(Self(m))
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        Self(CMatrix::from_diag(diag))
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.0)
    }

    /// `‖A‖₁ = Σ |λ_i|`.
    pub fn trace_norm(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.iter().map(|l| l.abs()).sum())
    }
}

/// Eigenvalues (ascending) and eigenvectors (as columns) of a Hermitian matrix,
/// by cyclic complex Jacobi rotations.
pub fn hermitian_eigen(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    jacobi(a, true).map(|(l, v)| (l, v.unwrap_or_else(|| CMatrix::zeros(0))))
}

/// Eigenvalues (ascending) of a Hermitian matrix.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    jacobi(a, false).map(|(l, _)| l)
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.size();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(input: &CMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<CMatrix>)> {
    let n = input.size();
    let mut a = input.clone();
    // symmetrize to an exactly Hermitian working copy
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let v = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = v;
            a[(j, i)] = v.conj();
        }
    }
    let mut v = want_vectors.then(|| CMatrix::identity(n));
    let threshold = JACOBI_TOLERANCE * a.frobenius_norm().max(1.0);

    let mut converged = n < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let g = a[(p, q)];
                let gabs = g.norm();
                if gabs <= threshold * 1e-3 {
                    continue;
                }
                rotate(&mut a, v.as_mut(), p, q, g, gabs);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) <= threshold {
        converged = true;
    }
    if !converged {
        return Err(Error::Convergence(alloc::format!(
            "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps (size {n})"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let vals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = v.map(|v| {
        let mut out = CMatrix::zeros(n);
        for (new, &old) in order.iter().enumerate() {
            for r in 0..n {
                out[(r, new)] = v[(r, old)];
            }
        }
        out
    });
    Ok((vals, vecs))
}

// U = [[c, s], [−s e^{−iφ}, c e^{−iφ}]] on (p, q), where a_pq = |g| e^{iφ};
// A ← U† A U zeroes a_pq.
fn rotate(a: &mut CMatrix, v: Option<&mut CMatrix>, p: usize, q: usize, g: C64, gabs: f64) {
    let n = a.size();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = g / gabs; // e^{iφ}
    let theta = (aqq - app) / (2.0 * gabs);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ep = phase.conj(); // e^{−iφ}

    // columns: A ← A U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * ep * s;
        a[(k, q)] = akp * s + akq * ep * c;
    }
    // rows: A ← U† A
    let em = phase; // e^{iφ}
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * em * s;
        a[(q, k)] = apk * s + aqk * em * c;
    }
    a[(p, q)] = C64::zero();
    a[(q, p)] = C64::zero();
    a[(p, p)] = C64::new(app - t * gabs, 0.0);
    a[(q, q)] = C64::new(aqq + t * gabs, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c - vkq * ep * s;
            v[(k, q)] = vkp * s + vkq * ep * c;
        }
    }
}
