//! Truncation sets, encoding dimensions, qubit counts and closed-form bounds.
//!
//! Every plan keeps a set of Schur–Weyl blocks. The encoding space is the
//! direct sum of their representation spaces, so `d_enc = Σ_{λ∈keep} d_λ`,
//! always computed with exact integers; qubit counts are exact ceilings of
//! `log₂ d_enc`. Closed-form bounds are plain floating-point formulas with
//! base-2 logarithms for qubit counts and natural logarithms inside
//! exponentials and `η(x) = −x ln x`.

mod resources;

pub use resources::{
    circuit_resource_estimate, mixed_prep_cost_model, simulate_mixed_prep, MixedPrepCost, MixedPrepSample, OpsOrder,
    ResourceEstimate,
};

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{ToPrimitive, Zero};

use crate::blocksim::block_weights;
use crate::error::{param_err, Error, Result};
use crate::math::{ceil_log2_big, eta, LN_2};
use crate::spectrum::Spectrum;
use crate::young::{enumerate_diagrams, irrep_dim, YoungDiagram};

/// Largest `N` scanned when looking for the threshold of the qubit error bound.
pub const THRESHOLD_SEARCH_LIMIT: u32 = 1 << 30;

/// How a plan chose its kept blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanKind {
    /// Every block is kept; the protocol is lossless.
    ZeroError,
    /// An interval of total spins around `j₀ = (p − ½)(N + 1)`.
    QubitInterval,
    /// A total-variation ball of radius `x_ε` around the spectrum.
    QuditBall,
    /// Densest blocks first under a dimension budget.
    Budget,
}

/// A named closed-form quantity attached to a plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound {
    pub name: &'static str,
    pub value: f64,
}

/// A block-truncation protocol and everything known about its cost.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressionPlan {
    pub kind: PlanKind,
    pub n: u32,
    pub d: usize,
    /// Row limit `r` of the diagrams considered.
    pub rank: usize,
    pub spectrum: Option<Spectrum>,
    pub epsilon: Option<f64>,
    /// Kept blocks, in decreasing diagram order.
    pub keep: Vec<YoungDiagram>,
    pub d_enc: BigUint,
    /// `⌈log₂ d_enc⌉`.
    pub qubit_count: u64,
    /// Qubits and classical bits for the variant that measures the block label
    /// and sends it classically: `(⌈log₂ max d_λ⌉, ⌈log₂ |keep|⌉)`.
    pub hybrid_qubit_bits: (u64, u64),
    /// The applicable closed-form upper bound on the qubit count.
    pub bound_qubits: Option<f64>,
    /// Smallest `N` at which the closed-form error bound drops below `ε`.
    pub threshold_n: Option<u32>,
    pub bounds: Vec<Bound>,
}

impl CompressionPlan {
    pub fn keep_set(&self) -> BTreeSet<YoungDiagram> {
        self.keep.iter().cloned().collect()
    }

    pub fn bound(&self, name: &str) -> Option<f64> {
        self.bounds.iter().find(|b| b.name == name).map(|b| b.value)
    }

    /// Kept total spins `2j` for qubit plans.
    pub fn kept_two_j(&self) -> Vec<u32> {
        self.keep.iter().filter_map(|l| l.two_j()).collect()
    }
}

fn ceil_log2_usize(x: usize) -> u64 {
    ceil_log2_big(&BigUint::from(x))
}

fn log2(x: f64) -> f64 {
    x.ln() / LN_2
}

/// `Σ_{λ∈keep} d_λ`, the largest `d_λ`, and the hybrid counts.
fn dimensions(keep: &[YoungDiagram], d: usize) -> Result<(BigUint, u64, (u64, u64))> {
    let mut total = BigUint::zero();
    let mut largest = BigUint::zero();
    for lambda in keep {
        let dim = irrep_dim(lambda, d)?;
        if dim > largest {
            largest = dim.clone();
        }
        total += dim;
    }
    let qubits = ceil_log2_big(&total);
    Ok((total, qubits, (ceil_log2_big(&largest), ceil_log2_usize(keep.len()))))
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(param_err!("error tolerance {epsilon} must lie in (0, 1]"));
    }
    Ok(())
}

/// `(2dr − r² + r − 2)/2 · log₂(N + d − 1)`, the zero-error qudit bound.
pub fn zero_error_bound_qubits(n: u32, d: usize, r: usize) -> f64 {
    let (d, r) = (d as f64, r as f64);
    (2.0 * d * r - r * r + r - 2.0) / 2.0 * log2(n as f64 + d - 1.0)
}

/// The lossless plan keeping every diagram of `Y_{N,r}`.
pub fn zero_error_plan(n: u32, d: usize, r: usize) -> Result<CompressionPlan> {
    if n < 1 {
        return Err(param_err!("need at least one copy"));
    }
    let keep: Vec<YoungDiagram> = enumerate_diagrams(n, d, r)?;
    let (d_enc, qubit_count, hybrid) = dimensions(&keep, d)?;
    let general = zero_error_bound_qubits(n, d, r);
    let mut bounds = alloc::vec![Bound {
        name: "zero_error_bound_qubits",
        value: general
    }];
    let bound_qubits = if d == 2 && r == 2 {
        let exact = 2.0 * log2(n as f64 + 2.0) - 2.0;
        bounds.push(Bound {
            name: "qubit_zero_error_formula",
            value: exact,
        });
        Some(exact)
    } else {
        Some(general)
    };
    Ok(CompressionPlan {
        kind: PlanKind::ZeroError,
        n,
        d,
        rank: r,
        spectrum: None,
        epsilon: None,
        keep,
        d_enc,
        qubit_count,
        hybrid_qubit_bits: hybrid,
        bound_qubits,
        threshold_n: None,
        bounds,
    })
}

/// `⌊√(N ln(2/ε))⌋`, the half-width of the kept spin interval.
pub fn qubit_half_width(n: u32, epsilon: f64) -> u32 {
    (n as f64 * (2.0 / epsilon).ln()).sqrt().floor() as u32
}

/// `2j_c`: the grid point at or below `2j₀ = (2p − 1)(N + 1)`, clipped to the
/// valid spins of `N`.
pub fn qubit_center_two_j(n: u32, p: f64) -> u32 {
    let two_j0 = (2.0 * p - 1.0) * (n as f64 + 1.0);
    let mut t = two_j0.floor().max(0.0) as i64;
    if (t - n as i64) % 2 != 0 {
        t -= 1;
    }
    t.clamp((n % 2) as i64, n as i64) as u32
}

/// Keeps the spins `j_c − w, …, j_c + w` that exist for `N`.
pub fn qubit_strip_plan(n: u32, p: f64, half_width: u32) -> Result<CompressionPlan> {
    let spectrum = Spectrum::qubit(p)?;
    if p <= 0.5 {
        return Err(Error::NotApplicable(format!(
            "an interval around j0 = (p - 1/2)(N + 1) needs p > 1/2, got p = {p}"
        )));
    }
    if n < 1 {
        return Err(param_err!("need at least one copy"));
    }
    let center = qubit_center_two_j(n, p) as i64;
    let lo = (center - 2 * half_width as i64).max((n % 2) as i64);
    let hi = (center + 2 * half_width as i64).min(n as i64);
    let keep: Vec<YoungDiagram> = (lo..=hi)
        .rev()
        .step_by(2)
        .map(|t| YoungDiagram::from_two_j(n, t as u32))
        .collect::<Result<_>>()?;
    let (d_enc, qubit_count, hybrid) = dimensions(&keep, 2)?;
    Ok(CompressionPlan {
        kind: PlanKind::QubitInterval,
        n,
        d: 2,
        rank: 2,
        spectrum: Some(spectrum),
        epsilon: None,
        keep,
        d_enc,
        qubit_count,
        hybrid_qubit_bits: hybrid,
        bound_qubits: None,
        threshold_n: None,
        bounds: Vec::new(),
    })
}

/// `3/2 log₂ N + log₂[4(2p − 1)√(ln(2/ε))]`, the approximate qubit count.
pub fn qubit_theorem_qubits(n: u32, p: f64, epsilon: f64) -> f64 {
    1.5 * log2(n as f64) + log2(4.0 * (2.0 * p - 1.0) * (2.0 / epsilon).ln().sqrt())
}

/// `(2j₀ + 1)(2√(N ln(2/ε)) + 1)`, the dimension bound of the kept interval.
pub fn qubit_dimension_bound(n: u32, p: f64, epsilon: f64) -> f64 {
    let j0 = (p - 0.5) * (n as f64 + 1.0);
    (2.0 * j0 + 1.0) * (2.0 * (n as f64 * (2.0 / epsilon).ln()).sqrt() + 1.0)
}

/// `ε^{2N/(N+1)} + exp(−2(2p−1)²N²/(N+1)) / (2p − 1)`.
pub fn qubit_error_upper_bound(n: u32, p: f64, epsilon: f64) -> Result<f64> {
    if !(p > 0.5 && p <= 1.0) {
        return Err(Error::NotApplicable(format!("the error bound needs p > 1/2, got {p}")));
    }
    check_epsilon(epsilon)?;
    let nf = n as f64;
    let g = 2.0 * p - 1.0;
    Ok(epsilon.powf(2.0 * nf / (nf + 1.0)) + (-2.0 * g * g * nf * nf / (nf + 1.0)).exp() / g)
}

/// Smallest `N ≥ 1` with `qubit_error_upper_bound(N, p, ε) < ε`. The bound
/// decreases in `N`, so a doubling search followed by bisection suffices.
pub fn qubit_error_threshold(p: f64, epsilon: f64) -> Result<Option<u32>> {
    let below = |n: u32| qubit_error_upper_bound(n, p, epsilon).map(|b| b < epsilon);
    if below(1)? {
        return Ok(Some(1));
    }
    let mut hi = 2u32;
    while !below(hi)? {
        if hi >= THRESHOLD_SEARCH_LIMIT {
            return Ok(None);
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if below(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// `(1 − 2ε) log₂(N + 1) − 2η(ε)` with `η(x) = −x ln x` in natural log.
pub fn pure_state_lower_bound(n: u32, epsilon: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&epsilon) {
        return Err(param_err!("pure-state bound needs 0 <= epsilon < 1/2, got {epsilon}"));
    }
    Ok((1.0 - 2.0 * epsilon) * log2(n as f64 + 1.0) - 2.0 * eta(epsilon))
}

/// The approximate qubit plan: keep `j_c ± ⌊√(N ln(2/ε))⌋`.
pub fn qubit_approx_plan(n: u32, p: f64, epsilon: f64) -> Result<CompressionPlan> {
    check_epsilon(epsilon)?;
    let mut plan = qubit_strip_plan(n, p, qubit_half_width(n, epsilon))?;
    plan.epsilon = Some(epsilon);
    let spectrum = Spectrum::qubit(p)?;
    let theorem = qubit_theorem_qubits(n, p, epsilon);
    let tail = tail_mass(n, &spectrum, &plan.keep_set())?;
    let mut bounds = alloc::vec![
        Bound {
            name: "theorem_qubits",
            value: theorem
        },
        Bound {
            name: "bound_qubits",
            value: theorem + 1.0
        },
        Bound {
            name: "dimension_bound",
            value: qubit_dimension_bound(n, p, epsilon)
        },
        Bound {
            name: "error_upper_bound",
            value: qubit_error_upper_bound(n, p, epsilon)?
        },
        Bound {
            name: "tail_mass",
            value: tail
        },
        Bound {
            name: "truncation_lower_bound",
            value: 0.5 * tail
        },
    ];
    if epsilon < 0.5 {
        bounds.push(Bound {
            name: "pure_state_lower_bound",
            value: pure_state_lower_bound(n, epsilon)?,
        });
    }
    plan.bound_qubits = Some(theorem + 1.0);
    plan.threshold_n = qubit_error_threshold(p, epsilon)?;
    plan.bounds = bounds;
    Ok(plan)
}

/// `x_ε = √((d(d+1)/2 ln(N+1) + ln(1/ε)) / (2N))`.
pub fn qudit_radius(n: u32, d: usize, epsilon: f64) -> f64 {
    let df = d as f64;
    ((df * (df + 1.0) / 2.0 * (n as f64 + 1.0).ln() + (1.0 / epsilon).ln()) / (2.0 * n as f64)).sqrt()
}

/// The qudit qubit-count bound
/// `(2dr − r² − 1 − m)/2 log₂(N+d−1) + (m+r−1)/2 log₂[4d(d+1) ln(N+1) + 8 ln(1/ε)]`.
pub fn qudit_bound_qubits(n: u32, d: usize, r: usize, m: usize, epsilon: f64) -> f64 {
    let (df, rf, mf, nf) = (d as f64, r as f64, m as f64, n as f64);
    let lead = (2.0 * df * rf - rf * rf - 1.0 - mf) / 2.0 * log2(nf + df - 1.0);
    let inner = 4.0 * df * (df + 1.0) * (nf + 1.0).ln() + 8.0 * (1.0 / epsilon).ln();
    lead + (mf + rf - 1.0) / 2.0 * log2(inner)
}

/// Leading term `(2dr − r² − 1 − m)/2 log₂(N+d−1)` of [`qudit_bound_qubits`].
pub fn qudit_bound_leading(n: u32, d: usize, r: usize, m: usize) -> f64 {
    let (df, rf, mf) = (d as f64, r as f64, m as f64);
    (2.0 * df * rf - rf * rf - 1.0 - mf) / 2.0 * log2(n as f64 + df - 1.0)
}

/// `log₂[(N+d−1)^{(2dr − r(r+1))/2 − m} (4Nx + r)^{m+r−1}]`, the finite-`N`
/// bound on `log₂ Σ d_λ` over the ball of radius `x`.
pub fn qudit_ball_dimension_bound_log2(n: u32, d: usize, r: usize, m: usize, x: f64) -> f64 {
    let (df, rf, mf, nf) = (d as f64, r as f64, m as f64, n as f64);
    ((2.0 * df * rf - rf * (rf + 1.0)) / 2.0 - mf) * log2(nf + df - 1.0) + (mf + rf - 1.0) * log2(4.0 * nf * x + rf)
}

/// The approximate qudit plan: keep every `λ ∈ Y_{N,r}` whose normalised
/// rows lie within total-variation distance `x_ε` of the spectrum.
pub fn qudit_approx_plan(n: u32, spectrum: &Spectrum, epsilon: f64) -> Result<CompressionPlan> {
    check_epsilon(epsilon)?;
    if n < 1 {
        return Err(param_err!("need at least one copy"));
    }
    let d = spectrum.dim();
    let r = spectrum.rank();
    let m = spectrum.degeneracy();
    let x = qudit_radius(n, d, epsilon);
    let keep: Vec<YoungDiagram> = enumerate_diagrams(n, d, r)?
        .into_iter()
        .filter(|l| spectrum.total_variation(&l.frequencies()) <= x)
        .collect();
    if keep.is_empty() {
        return Err(Error::NotApplicable(format!(
            "no diagram lies within distance {x} of the spectrum"
        )));
    }
    let (d_enc, qubit_count, hybrid) = dimensions(&keep, d)?;
    let bound = qudit_bound_qubits(n, d, r, m, epsilon);
    let keep_set: BTreeSet<YoungDiagram> = keep.iter().cloned().collect();
    let tail = tail_mass(n, spectrum, &keep_set)?;
    let bounds = alloc::vec![
        Bound {
            name: "bound_qubits",
            value: bound
        },
        Bound {
            name: "bound_qubits_nondegenerate",
            value: qudit_bound_qubits(n, d, r, 0, epsilon)
        },
        Bound {
            name: "leading_qubits",
            value: qudit_bound_leading(n, d, r, m)
        },
        Bound {
            name: "ball_dimension_bound_log2",
            value: qudit_ball_dimension_bound_log2(n, d, r, m, x)
        },
        Bound {
            name: "radius",
            value: x
        },
        Bound {
            name: "keyl_werner_tail_bound",
            value: keyl_werner_tail_bound(n, d, x)?
        },
        Bound {
            name: "tail_mass",
            value: tail
        },
        Bound {
            name: "truncation_lower_bound",
            value: 0.5 * tail
        },
    ];
    Ok(CompressionPlan {
        kind: PlanKind::QuditBall,
        n,
        d,
        rank: r,
        spectrum: Some(spectrum.clone()),
        epsilon: Some(epsilon),
        keep,
        d_enc,
        qubit_count,
        hybrid_qubit_bits: hybrid,
        bound_qubits: Some(bound),
        threshold_n: None,
        bounds,
    })
}

/// `Σ_{λ∉keep} q_λ`.
pub fn tail_mass(n: u32, spectrum: &Spectrum, keep: &BTreeSet<YoungDiagram>) -> Result<f64> {
    Ok(block_weights(spectrum, n)?
        .into_iter()
        .filter(|(l, _)| !keep.contains(l))
        .map(|(_, w)| w)
        .sum())
}

/// `½(1 − Σ_{λ∈keep} q_λ)`, the error floor of any block truncation to `keep`.
pub fn truncation_lower_bound(n: u32, spectrum: &Spectrum, keep: &BTreeSet<YoungDiagram>) -> Result<f64> {
    let kept: f64 = block_weights(spectrum, n)?
        .into_iter()
        .filter(|(l, _)| keep.contains(l))
        .map(|(_, w)| w)
        .sum();
    Ok(0.5 * (1.0 - kept).max(0.0))
}

/// `(N+1)^{d(d+1)/2} e^{−2Nx²}`.
pub fn keyl_werner_tail_bound(n: u32, d: usize, x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(param_err!("radius must be positive, got {x}"));
    }
    let df = d as f64;
    Ok((df * (df + 1.0) / 2.0 * (n as f64 + 1.0).ln() - 2.0 * n as f64 * x * x).exp())
}

/// `Σ q_λ` over diagrams with `d(λ/N, p) > x`.
pub fn empirical_tail(n: u32, spectrum: &Spectrum, x: f64) -> Result<f64> {
    Ok(block_weights(spectrum, n)?
        .into_iter()
        .filter(|(l, _)| spectrum.total_variation(&l.frequencies()) > x)
        .map(|(_, w)| w)
        .sum())
}

/// `p̂ = ½ + j/(N+1)`.
pub fn spectrum_estimate(n: u32, two_j: u32) -> Result<f64> {
    if two_j > n {
        return Err(param_err!("2j = {two_j} exceeds N = {n}"));
    }
    Ok(0.5 + 0.5 * two_j as f64 / (n as f64 + 1.0))
}

/// Chooses blocks by decreasing `q_λ / d_λ`, adding each one that still fits
/// under `budget` on `d_enc`.
pub fn budget_plan(n: u32, spectrum: &Spectrum, budget: &BigUint) -> Result<CompressionPlan> {
    let d = spectrum.dim();
    let mut scored: Vec<(YoungDiagram, f64, BigUint)> = Vec::new();
    for (lambda, w) in block_weights(spectrum, n)? {
        let dim = irrep_dim(&lambda, d)?;
        scored.push((lambda, w, dim));
    }
    let density = |w: f64, dim: &BigUint| w / dim.to_f64().unwrap_or(f64::INFINITY);
    scored.sort_by(|a, b| {
        density(b.1, &b.2)
            .total_cmp(&density(a.1, &a.2))
            .then_with(|| b.0.cmp(&a.0))
    });
    let mut used = BigUint::zero();
    let mut keep = Vec::new();
    for (lambda, _, dim) in scored {
        if &used + &dim <= *budget {
            used += dim;
            keep.push(lambda);
        }
    }
    if keep.is_empty() {
        return Err(Error::NotApplicable(format!("no block fits in a budget of {budget}")));
    }
    keep.sort_by(|a, b| b.cmp(a));
    let (d_enc, qubit_count, hybrid) = dimensions(&keep, d)?;
    let keep_set: BTreeSet<YoungDiagram> = keep.iter().cloned().collect();
    let tail = tail_mass(n, spectrum, &keep_set)?;
    Ok(CompressionPlan {
        kind: PlanKind::Budget,
        n,
        d,
        rank: spectrum.rank(),
        spectrum: Some(spectrum.clone()),
        epsilon: None,
        keep,
        d_enc,
        qubit_count,
        hybrid_qubit_bits: hybrid,
        bound_qubits: None,
        threshold_n: None,
        bounds: alloc::vec![
            Bound {
                name: "tail_mass",
                value: tail
            },
            Bound {
                name: "truncation_lower_bound",
                value: 0.5 * tail
            },
        ],
    })
}

/// `Σ_{λ∈Y_{N,r}} d_λ`.
pub fn total_irrep_dim(n: u32, d: usize, r: usize) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for lambda in enumerate_diagrams(n, d, r)? {
        total += irrep_dim(&lambda, d)?;
    }
    Ok(total)
}
