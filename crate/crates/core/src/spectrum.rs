use alloc::vec::Vec;

use crate::error::{param_err, Result};

/// Tolerance on `Σ p = 1` accepted by [`Spectrum::new`].
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Two eigenvalues closer than this count as degenerate.
const DEGENERACY_TOLERANCE: f64 = 1e-12;

/// Eigenvalues `p₁ ≥ p₂ ≥ … ≥ p_d ≥ 0` of the single-copy state.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    probs: Vec<f64>,
}

impl Spectrum {
    /// Sorts `probs` in descending order and checks it is a probability vector.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(probs, SUM_TOLERANCE, false)
    }

    /// Accepts vectors whose sum is within `tol` of one and rescales them to
    /// sum exactly to one. Vectors further off are rejected.
    pub fn normalized(probs: Vec<f64>, tol: f64) -> Result<Self> {
        Self::with_tolerance(probs, tol, true)
    }

    fn with_tolerance(mut probs: Vec<f64>, tol: f64, rescale: bool) -> Result<Self> {
        if probs.is_empty() {
            return Err(param_err!("spectrum is empty"));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(param_err!(
                "spectrum entries must be finite and non-negative: {probs:?}"
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(param_err!("spectrum sums to {sum}, not 1"));
        }
        if rescale {
            probs.iter_mut().for_each(|p| *p /= sum);
        }
        probs.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { probs })
    }

    /// The qubit spectrum `(p, 1 − p)` with maximum eigenvalue `p ∈ [1/2, 1]`.
    pub fn qubit(p: f64) -> Result<Self> {
        if !(0.5..=1.0).contains(&p) {
            return Err(param_err!("maximum eigenvalue p = {p} must lie in [1/2, 1]"));
        }
        Ok(Self {
            probs: alloc::vec![p, 1.0 - p],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Local dimension `d`.
    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    /// Number of strictly positive eigenvalues.
    pub fn rank(&self) -> usize {
        self.probs.iter().filter(|&&p| p > 0.0).count()
    }

    /// Largest eigenvalue.
    pub fn max(&self) -> f64 {
        self.probs[0]
    }

    /// `m = Σ_i μ_i` with `μ_i = |{ j > i : p_j = p_i }|` over positive entries.
    pub fn degeneracy(&self) -> usize {
        let pos: Vec<f64> = self.probs.iter().copied().filter(|&p| p > 0.0).collect();
        let mut m = 0;
        for i in 0..pos.len() {
            m += pos[i + 1..]
                .iter()
                .filter(|&&q| (q - pos[i]).abs() <= DEGENERACY_TOLERANCE)
                .count();
        }
        m
    }

    /// Total variation distance `½ Σ |a_i − p_i|` to another probability vector
    /// (the shorter vector is padded with zeros).
    pub fn total_variation(&self, other: &[f64]) -> f64 {
        let n = self.probs.len().max(other.len());
        let mut s = 0.0;
        for i in 0..n {
            let a = self.probs.get(i).copied().unwrap_or(0.0);
            let b = other.get(i).copied().unwrap_or(0.0);
            s += (a - b).abs();
        }
        0.5 * s
    }
}
