//! Register widths, operation-count orders and the cost of preparing the
//! maximally mixed multiplicity state.

use core::fmt;

use num_bigint::BigUint;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, ToPrimitive};
use rand_core::RngCore;

use crate::error::{param_err, Result};
use crate::math::{ceil_log2_big, ln_biguint, ln_binomial, LN_2};
use crate::young::{multiplicity_dim, YoungDiagram};

use super::qubit_half_width;

/// Asymptotic operation count, either an unspecified polynomial or
/// `N^{num/den} (log N)^{log_power}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpsOrder {
    Poly,
    Power { num: u32, den: u32, log_power: u32 },
}

impl OpsOrder {
    pub const fn power(num: u32, den: u32, log_power: u32) -> Self {
        OpsOrder::Power { num, den, log_power }
    }
}

impl fmt::Display for OpsOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OpsOrder::Poly => write!(f, "poly(N)"),
            OpsOrder::Power { num, den, log_power } => {
                match (num, den) {
                    (0, _) => write!(f, "1")?,
                    (1, 1) => write!(f, "N")?,
                    (n, 1) => write!(f, "N^{n}")?,
                    (n, d) => write!(f, "N^({n}/{d})")?,
                }
                match log_power {
                    0 => Ok(()),
                    1 => write!(f, " log N"),
                    k => write!(f, " (log N)^{k}"),
                }
            }
        }
    }
}

/// Qubit registers and operation counts of the qubit compression circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceEstimate {
    /// `⌈log₂(⌊N/2⌋ + 1)⌉`, enough to hold any total spin `j`.
    pub index_register_qubits: u64,
    /// `⌈log₂(N + 1)⌉`, enough for the largest representation space.
    pub representation_register_qubits: u64,
    /// `⌈log₂ max_j m_j⌉`.
    pub multiplicity_register_qubits: u64,
    /// Work qubits of the Schur transform and position embedding, `⌈log₂(N + 1)⌉`.
    pub ancilla_qubits: u64,
    /// `⌈log₂ |S_ε|⌉` for the kept spin interval.
    pub kept_index_qubits: u64,
    /// Qubits that must stay coherent: index + representation + ancilla.
    pub coherent_qubits: u64,
    pub encoding_ops_order: OpsOrder,
    pub decoding_ops_order: OpsOrder,
    pub position_embedding_order: OpsOrder,
    pub mixed_prep_order: OpsOrder,
}

/// `max_j m_j` over the spins of `N` qubits, exactly.
fn max_qubit_multiplicity(n: u32) -> BigUint {
    // m_j = C(N, k)(2j + 1)/(N − k + 1) with k = N/2 − j; locate the peak in
    // floating point, then settle it exactly among its neighbours.
    let ln_m = |two_j: u32| {
        let k = (n - two_j) / 2;
        ln_binomial(n as u64, k as u64) + ((two_j + 1) as f64 / (n - k + 1) as f64).ln()
    };
    let peak = (n % 2..=n)
        .step_by(2)
        .max_by(|&a, &b| ln_m(a).total_cmp(&ln_m(b)))
        .unwrap_or(n);
    let lo = peak.saturating_sub(4).max(n % 2);
    let hi = (peak + 4).min(n);
    (lo..=hi)
        .filter(|t| (n - t).is_multiple_of(2))
        .filter_map(|t| YoungDiagram::from_two_j(n, t).ok())
        .map(|l| multiplicity_dim(&l))
        .max()
        .unwrap_or_else(BigUint::one)
}

/// Register widths and operation-count orders for `N` qubits at tolerance `ε`.
pub fn circuit_resource_estimate(n: u32, epsilon: f64) -> Result<ResourceEstimate> {
    if n < 2 {
        return Err(param_err!("resource estimates need N >= 2, got {n}"));
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(param_err!("error tolerance {epsilon} must lie in (0, 1]"));
    }
    let bits = |x: u64| ceil_log2_big(&BigUint::from(x));
    let index = bits(n as u64 / 2 + 1);
    let representation = bits(n as u64 + 1);
    let ancilla = representation;
    let spins = (2 * qubit_half_width(n, epsilon) as u64 + 1).min(n as u64 / 2 + 1);
    Ok(ResourceEstimate {
        index_register_qubits: index,
        representation_register_qubits: representation,
        multiplicity_register_qubits: ceil_log2_big(&max_qubit_multiplicity(n)),
        ancilla_qubits: ancilla,
        kept_index_qubits: bits(spins),
        coherent_qubits: index + representation + ancilla,
        encoding_ops_order: OpsOrder::Poly,
        decoding_ops_order: OpsOrder::power(5, 2, 0),
        position_embedding_order: OpsOrder::power(1, 1, 2),
        mixed_prep_order: OpsOrder::power(2, 1, 0),
    })
}

/// Repeat-until-success preparation of `I_m/m` from `n = ⌈log₂ m⌉` maximally
/// entangled pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedPrepCost {
    pub register_qubits: u64,
    /// `m / 2^n`.
    pub success_prob_per_round: f64,
    /// `(1 − m/2^n)^l`.
    pub failure_prob: f64,
    /// `2^{−l}`.
    pub failure_bound: f64,
    pub ops_order: OpsOrder,
}

pub fn mixed_prep_cost_model(m_lambda: &BigUint, rounds: u32) -> Result<MixedPrepCost> {
    if m_lambda < &BigUint::one() {
        return Err(param_err!("multiplicity must be at least 1"));
    }
    if rounds < 1 {
        return Err(param_err!("need at least one round"));
    }
    let n = ceil_log2_big(m_lambda);
    let success = match m_lambda.to_u64() {
        Some(m) if n < 53 => m as f64 / (1u64 << n) as f64,
        _ => (ln_biguint(m_lambda) - n as f64 * LN_2).exp(),
    };
    Ok(MixedPrepCost {
        register_qubits: n,
        success_prob_per_round: success,
        failure_prob: (1.0 - success).powi(rounds as i32),
        failure_bound: 0.5f64.powi(rounds as i32),
        ops_order: OpsOrder::power(2, 1, 0),
    })
}

/// Monte-Carlo run of the repeat-until-success preparation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedPrepSample {
    pub trials: u64,
    /// Rounds attempted over all trials.
    pub rounds: u64,
    /// Successful rounds / rounds attempted.
    pub success_frequency: f64,
    /// Fraction of trials that failed all `l` rounds.
    pub failure_frequency: f64,
}

/// Each round draws `n` uniform bits and succeeds when they encode a value
/// below `m`; a trial stops at the first success or after `rounds` rounds.
pub fn simulate_mixed_prep<R: RngCore + ?Sized>(
    m: u64,
    rounds: u32,
    trials: u64,
    rng: &mut R,
) -> Result<MixedPrepSample> {
    if m < 1 || rounds < 1 || trials < 1 {
        return Err(param_err!("need m >= 1, rounds >= 1 and trials >= 1"));
    }
    let n = ceil_log2_big(&BigUint::from(m));
    let mut attempted = 0u64;
    let mut succeeded = 0u64;
    let mut failures = 0u64;
    for _ in 0..trials {
        let mut ok = false;
        for _ in 0..rounds {
            attempted += 1;
            let y = if n == 0 { 0 } else { rng.next_u64() >> (64 - n) };
            if y < m {
                ok = true;
                succeeded += 1;
                break;
            }
        }
        if !ok {
            failures += 1;
        }
    }
    Ok(MixedPrepSample {
        trials,
        rounds: attempted,
        success_frequency: succeeded as f64 / attempted as f64,
        failure_frequency: failures as f64 / trials as f64,
    })
}
