//! Permutation-invariant `N`-copy states as Schur–Weyl block ensembles.
//!
//! A [`BlockState`] stores, for every Young diagram `λ`, a weight `q_λ` and a
//! unit-trace density matrix `ρ_λ` on the representation space `R_λ`. The
//! multiplicity factor `I_{m_λ}/m_λ` is implied and never materialised, so
//! the represented operator is `⊕_λ q_λ ρ_λ ⊗ I_{m_λ}/m_λ`.
//!
//! The encoding channel keeps a chosen set of blocks, drops their
//! multiplicity factors and reroutes the discarded weight into a fixed dump
//! state; decoding re-appends the multiplicity factors. Because the
//! multiplicity factor is the same maximally mixed state on both sides of a
//! comparison, the trace distance reduces to a sum of per-block trace norms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::ToPrimitive;
use rand_core::RngCore;

use crate::error::{param_err, Error, Result};
use crate::linalg::{hermitian_eigenvalues, CMatrix, HermitianMatrix, C64};
use crate::math::{ln_biguint, ln_binomial, ln_pow};
use crate::schur::SchurTable;
use crate::spectrum::Spectrum;
use crate::su2::{wigner_d, WignerRotation};
use crate::young::{enumerate_diagrams, irrep_dim, multiplicity_dim, semistandard_tableaux, YoungDiagram};

/// Weights below this are stored as exact zeros.
pub const WEIGHT_FLOOR: f64 = 1e-300;

/// Tolerance for the unit-trace, positivity and normalisation checks.
pub const STATE_TOLERANCE: f64 = 1e-10;

/// Direction of a qubit's Bloch vector (polar angle `theta`, azimuth `phi`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub theta: f64,
    pub phi: f64,
}

impl BlochVector {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }
}

/// Eigenbasis of the single-copy state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Orientation {
    /// Diagonal in the computational basis.
    Identity,
    /// A qubit whose dominant eigenvector points along the given Bloch vector.
    Bloch(BlochVector),
}

/// The density matrix of one block.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockMatrix {
    Diagonal(Vec<f64>),
    Dense(HermitianMatrix),
}

impl BlockMatrix {
    pub fn size(&self) -> usize {
        match self {
            BlockMatrix::Diagonal(v) => v.len(),
            BlockMatrix::Dense(h) => h.size(),
        }
    }

    pub fn trace(&self) -> f64 {
        match self {
            BlockMatrix::Diagonal(v) => v.iter().sum(),
            BlockMatrix::Dense(h) => h.trace(),
        }
    }

    pub fn to_dense(&self) -> CMatrix {
        match self {
            BlockMatrix::Diagonal(v) => CMatrix::from_diag(v),
            BlockMatrix::Dense(h) => h.as_matrix().clone(),
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        match self {
            BlockMatrix::Diagonal(v) => {
                let mut e = v.clone();
                e.sort_by(|a, b| a.total_cmp(b));
                Ok(e)
            }
            BlockMatrix::Dense(h) => h.eigenvalues(),
        }
    }

    /// `a·A + b·B` for two blocks of the same size.
    fn combine(a: f64, x: &BlockMatrix, b: f64, y: &BlockMatrix) -> Result<BlockMatrix> {
        if x.size() != y.size() {
            return Err(param_err!("block sizes {} and {} differ", x.size(), y.size()));
        }
        Ok(match (x, y) {
            (BlockMatrix::Diagonal(u), BlockMatrix::Diagonal(v)) => {
                BlockMatrix::Diagonal(u.iter().zip(v).map(|(p, q)| a * p + b * q).collect())
            }
            _ => BlockMatrix::Dense(HermitianMatrix::new(x.to_dense().scale(a).add(&y.to_dense().scale(b)))?),
        })
    }

    /// `‖a·A − b·B‖₁`, exactly symmetric under swapping the two operands.
    fn weighted_trace_distance(a: f64, x: &BlockMatrix, b: f64, y: &BlockMatrix) -> Result<f64> {
        // Jacobi sweeps on M and −M take different rotation paths, so fix
        // the operand order to make the result bitwise symmetric.
        match a.total_cmp(&b) {
            core::cmp::Ordering::Less => Self::difference_norm(b, y, a, x),
            core::cmp::Ordering::Greater => Self::difference_norm(a, x, b, y),
            core::cmp::Ordering::Equal => {
                Ok(0.5 * (Self::difference_norm(a, x, b, y)? + Self::difference_norm(b, y, a, x)?))
            }
        }
    }

    fn difference_norm(a: f64, x: &BlockMatrix, b: f64, y: &BlockMatrix) -> Result<f64> {
        match Self::combine(a, x, -b, y)? {
            BlockMatrix::Diagonal(v) => Ok(v.iter().map(|e| e.abs()).sum()),
            BlockMatrix::Dense(h) => h.trace_norm(),
        }
    }
}

/// One block: its weight `q_λ` and its normalised density matrix `ρ_λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub weight: f64,
    pub matrix: BlockMatrix,
}

/// A permutation-invariant state on `(C^d)^{⊗N}` in block form.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockState {
    n: u32,
    d: usize,
    blocks: BTreeMap<YoungDiagram, Block>,
    multiplicity_free: bool,
}

impl BlockState {
    /// Validates and assembles a block state. Every diagram must have `d`
    /// rows and `N` boxes, every matrix must have size `d_λ`, unit trace and
    /// no eigenvalue below `−1e−10`, and the weights must sum to one.
    pub fn from_blocks(
        n: u32,
        d: usize,
        blocks: BTreeMap<YoungDiagram, Block>,
        multiplicity_free: bool,
    ) -> Result<Self> {
        if d == 0 {
            return Err(param_err!("local dimension must be positive"));
        }
        let mut total = 0.0;
        for (lambda, block) in &blocks {
            if lambda.row_bound() != d || lambda.box_count() != n {
                return Err(param_err!("diagram {lambda} does not belong to N = {n}, d = {d}"));
            }
            let dim = irrep_dim(lambda, d)?;
            if dim.to_usize() != Some(block.matrix.size()) {
                return Err(param_err!(
                    "block {lambda} has size {} but d_λ = {dim}",
                    block.matrix.size()
                ));
            }
            if block.weight.is_nan() || block.weight < 0.0 {
                return Err(param_err!("block {lambda} has negative weight {}", block.weight));
            }
            if block.weight > 0.0 {
                let tr = block.matrix.trace();
                if (tr - 1.0).abs() > STATE_TOLERANCE {
                    return Err(param_err!("block {lambda} has trace {tr}"));
                }
                let min = block.matrix.eigenvalues()?.first().copied().unwrap_or(0.0);
                if min < -STATE_TOLERANCE {
                    return Err(param_err!("block {lambda} has eigenvalue {min}"));
                }
            }
            total += block.weight;
        }
        if (total - 1.0).abs() > STATE_TOLERANCE {
            return Err(param_err!("block weights sum to {total}"));
        }
        Ok(Self {
            n,
            d,
            blocks,
            multiplicity_free,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &BTreeMap<YoungDiagram, Block> {
        &self.blocks
    }

    /// `true` for encoded states, whose multiplicity factors were traced out.
    pub fn is_multiplicity_free(&self) -> bool {
        self.multiplicity_free
    }

    /// Weight of `λ` (zero when the block is absent).
    pub fn weight(&self, lambda: &YoungDiagram) -> f64 {
        self.blocks.get(lambda).map_or(0.0, |b| b.weight)
    }

    /// `(λ, q_λ)` in decreasing diagram order.
    pub fn weights(&self) -> Vec<(YoungDiagram, f64)> {
        self.blocks.iter().rev().map(|(l, b)| (l.clone(), b.weight)).collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.blocks.values().map(|b| b.weight).sum()
    }
}

/// `q_{j,N}` for the qubit spectrum `(p, 1 − p)`, by the eigenvalue sum
/// `m_j Σ_{m=−j}^{j} p^{N/2+m}(1−p)^{N/2−m}` accumulated in log space.
pub fn qubit_weight(n: u32, p: f64, two_j: u32) -> Result<f64> {
    Ok(ln_qubit_weight(n, p, two_j)?.exp())
}

/// `ln q_{j,N}`; see [`qubit_weight`].
pub fn ln_qubit_weight(n: u32, p: f64, two_j: u32) -> Result<f64> {
    if !(0.5..=1.0).contains(&p) {
        return Err(param_err!("maximum eigenvalue p = {p} must lie in [1/2, 1]"));
    }
    if two_j > n || !(n - two_j).is_multiple_of(2) {
        return Err(param_err!("2j = {two_j} is not a valid spin for N = {n}"));
    }
    let k = (n - two_j) / 2;
    let hi = (n - k) as f64;
    // m_j = C(N, k) − C(N, k − 1) = C(N, k)(2j + 1)/(N − k + 1)
    let ln_m = ln_binomial(n as u64, k as u64) + ((two_j + 1) as f64 / (n - k + 1) as f64).ln();
    // Σ_{t=0}^{2j} r^t with r = (1 − p)/p ≤ 1
    let terms = (two_j + 1) as f64;
    let ln_geom = if p == 0.5 {
        terms.ln()
    } else if p == 1.0 {
        0.0
    } else {
        let ln_r = (1.0 - p).ln() - p.ln();
        (-(terms * ln_r).exp_m1()).ln() - ((2.0 * p - 1.0) / p).ln()
    };
    Ok(ln_m + ln_pow(p, hi) + ln_pow(1.0 - p, k as f64) + ln_geom)
}

fn binomial_pmf(n: u32, p: f64, k: i64) -> f64 {
    if k < 0 || k > n as i64 {
        return 0.0;
    }
    let k = k as u64;
    (ln_binomial(n as u64, k) + ln_pow(p, k as f64) + ln_pow(1.0 - p, (n as u64 - k) as f64)).exp()
}

/// `q_{j,N}` as a difference of binomial probabilities,
/// `(2j+1)/(2j₀) [B(N+1, p, N/2+j+1) − B(N+1, p, N/2−j)]` with
/// `j₀ = (p − ½)(N + 1)`. Only defined for `p > 1/2`; kept as an independent
/// check on [`qubit_weight`].
pub fn qubit_weight_binomial(n: u32, p: f64, two_j: u32) -> Result<f64> {
    if !(p > 0.5 && p <= 1.0) {
        return Err(param_err!("the binomial form needs 1/2 < p <= 1, got {p}"));
    }
    if two_j > n || !(n - two_j).is_multiple_of(2) {
        return Err(param_err!("2j = {two_j} is not a valid spin for N = {n}"));
    }
    let two_j0 = (2.0 * p - 1.0) * (n as f64 + 1.0);
    let upper = (n as i64 + two_j as i64) / 2 + 1;
    let lower = (n as i64 - two_j as i64) / 2;
    let diff = binomial_pmf(n + 1, p, upper) - binomial_pmf(n + 1, p, lower);
    Ok((two_j + 1) as f64 / two_j0 * diff)
}

/// Normalised `p^{j+m}(1−p)^{j−m}` for `m = j, …, −j`.
fn qubit_block_diagonal(p: f64, two_j: u32) -> Vec<f64> {
    let r = if p >= 1.0 { 0.0 } else { (1.0 - p) / p };
    let mut v = Vec::with_capacity(two_j as usize + 1);
    let mut x = 1.0;
    for _ in 0..=two_j {
        v.push(x);
        x *= r;
    }
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|e| *e /= s);
    v
}

/// `(λ, q_λ)` over `Y_{N,r}` (with `r` the rank), in decreasing diagram
/// order, without building any block matrices. Weights below
/// [`WEIGHT_FLOOR`] are reported as zero.
pub fn block_weights(spectrum: &Spectrum, n: u32) -> Result<Vec<(YoungDiagram, f64)>> {
    let d = spectrum.dim();
    let diagrams = enumerate_diagrams(n, d, spectrum.rank())?;
    let mut out = Vec::with_capacity(diagrams.len());
    if d == 2 {
        for lambda in diagrams {
            let w = qubit_weight(n, spectrum.max(), lambda.rows()[0] - lambda.rows()[1])?;
            out.push((lambda, if w < WEIGHT_FLOOR { 0.0 } else { w }));
        }
    } else {
        let mut table = SchurTable::new(spectrum);
        for lambda in diagrams {
            let w = (table.ln_value(&lambda) + ln_biguint(&multiplicity_dim(&lambda))).exp();
            out.push((lambda, if w < WEIGHT_FLOOR { 0.0 } else { w }));
        }
    }
    Ok(out)
}

fn zero_block(size: usize) -> Block {
    Block {
        weight: 0.0,
        matrix: BlockMatrix::Diagonal(vec![0.0; size]),
    }
}

/// The block form of `ρ^{⊗N}` with `ρ` of the given spectrum and orientation.
///
/// Blocks range over diagrams with at most `rank` non-zero rows. Qubit blocks
/// are `D^j diag(p^{j+m}(1−p)^{j−m}) D^{j†}` (normalised); qudit blocks are
/// diagonal in the semistandard-tableau basis.
pub fn product_state(spectrum: &Spectrum, orientation: Orientation, n: u32) -> Result<BlockState> {
    let d = spectrum.dim();
    if d > 2 && orientation != Orientation::Identity {
        return Err(Error::Unsupported(alloc::format!(
            "rotated states are only modelled for qubits (d = {d})"
        )));
    }
    let diagrams = enumerate_diagrams(n, d, spectrum.rank())?;
    let mut blocks = BTreeMap::new();
    if d == 2 {
        let p = spectrum.max();
        for lambda in diagrams {
            let two_j = lambda.rows()[0] - lambda.rows()[1];
            let w = qubit_weight(n, p, two_j)?;
            let block = if w < WEIGHT_FLOOR {
                zero_block(two_j as usize + 1)
            } else {
                let diag = qubit_block_diagonal(p, two_j);
                let matrix = match orientation {
                    Orientation::Identity => BlockMatrix::Diagonal(diag),
                    Orientation::Bloch(b) => {
                        let u = wigner_d(&WignerRotation::new(b.phi, b.theta, 0.0, two_j));
                        let m = u.matmul(&CMatrix::from_diag(&diag)).matmul(&u.adjoint());
                        BlockMatrix::Dense(HermitianMatrix::new(m)?)
                    }
                };
                Block { weight: w, matrix }
            };
            blocks.insert(lambda, block);
        }
    } else {
        let mut table = SchurTable::new(spectrum);
        let ln_p: Vec<f64> = spectrum.probs().to_vec();
        for lambda in diagrams {
            let ln_s = table.ln_value(&lambda);
            let ln_w = ln_s + ln_biguint(&multiplicity_dim(&lambda));
            let w = ln_w.exp();
            let size = irrep_dim(&lambda, d)?
                .to_usize()
                .ok_or_else(|| Error::Resource(alloc::format!("block {lambda} is too large to store")))?;
            let block = if w < WEIGHT_FLOOR {
                zero_block(size)
            } else {
                let diag: Vec<f64> = semistandard_tableaux(&lambda, d)
                    .iter()
                    .map(|t| {
                        let ln_mono: f64 = t.content(d).iter().zip(&ln_p).map(|(&c, &p)| ln_pow(p, c as f64)).sum();
                        (ln_mono - ln_s).exp()
                    })
                    .collect();
                Block {
                    weight: w,
                    matrix: BlockMatrix::Diagonal(diag),
                }
            };
            blocks.insert(lambda, block);
        }
    }
    Ok(BlockState {
        n,
        d,
        blocks,
        multiplicity_free: false,
    })
}

/// The encoding channel: keeps the blocks in `keep`, traces out their
/// multiplicity factors and sends the discarded weight to `dump`.
pub fn encode(state: &BlockState, keep: &BTreeSet<YoungDiagram>, dump: &BlockState) -> Result<BlockState> {
    if keep.is_empty() {
        return Err(param_err!("the kept block set is empty"));
    }
    if state.multiplicity_free {
        return Err(Error::Contract("encode expects a state in decoded form".into()));
    }
    if dump.n != state.n || dump.d != state.d {
        return Err(param_err!(
            "dump state has (N, d) = ({}, {}), expected ({}, {})",
            dump.n,
            dump.d,
            state.n,
            state.d
        ));
    }
    for lambda in keep {
        if !state.blocks.contains_key(lambda) {
            return Err(param_err!("kept diagram {lambda} is not a block of the state"));
        }
    }
    for (lambda, block) in &dump.blocks {
        if block.weight > 0.0 && !keep.contains(lambda) {
            return Err(Error::Contract(alloc::format!(
                "dump state has support on discarded block {lambda}"
            )));
        }
    }
    let tail: f64 = state
        .blocks
        .iter()
        .filter(|(l, _)| !keep.contains(*l))
        .map(|(_, b)| b.weight)
        .sum();
    let mut out = BTreeMap::new();
    for lambda in keep {
        let kept = &state.blocks[lambda];
        let dumped = dump.blocks.get(lambda).filter(|b| b.weight > 0.0 && tail > 0.0);
        let block = match dumped {
            None => kept.clone(),
            Some(db) => {
                let extra = tail * db.weight;
                let w = kept.weight + extra;
                let matrix = if kept.weight == 0.0 {
                    db.matrix.clone()
                } else {
                    BlockMatrix::combine(kept.weight / w, &kept.matrix, extra / w, &db.matrix)?
                };
                Block { weight: w, matrix }
            }
        };
        out.insert(lambda.clone(), block);
    }
    Ok(BlockState {
        n: state.n,
        d: state.d,
        blocks: out,
        multiplicity_free: true,
    })
}

/// The decoding channel: re-appends the maximally mixed multiplicity factor
/// to every block of an encoded state.
pub fn decode(encoded: &BlockState) -> Result<BlockState> {
    if !encoded.multiplicity_free {
        return Err(Error::Contract("decode expects an encoded state".into()));
    }
    Ok(BlockState {
        multiplicity_free: false,
        ..encoded.clone()
    })
}

/// `½‖A − B‖₁` between two decoded block states.
pub fn trace_distance(a: &BlockState, b: &BlockState) -> Result<f64> {
    if a.n != b.n || a.d != b.d {
        return Err(param_err!(
            "cannot compare (N, d) = ({}, {}) with ({}, {})",
            a.n,
            a.d,
            b.n,
            b.d
        ));
    }
    if a.multiplicity_free || b.multiplicity_free {
        return Err(Error::Contract("trace distance is defined on decoded states".into()));
    }
    let keys: BTreeSet<&YoungDiagram> = a.blocks.keys().chain(b.blocks.keys()).collect();
    let mut total = 0.0;
    for lambda in keys {
        total += match (a.blocks.get(lambda), b.blocks.get(lambda)) {
            (Some(x), Some(y)) => BlockMatrix::weighted_trace_distance(x.weight, &x.matrix, y.weight, &y.matrix)?,
            (Some(x), None) | (None, Some(x)) => x.weight,
            (None, None) => 0.0,
        };
    }
    Ok(0.5 * total)
}

/// The maximally mixed state on `⊕_{λ ∈ keep} R_λ`, written as a block state
/// (block `λ` gets weight `d_λ / d_enc`).
pub fn maximally_mixed_dump(n: u32, d: usize, keep: &BTreeSet<YoungDiagram>) -> Result<BlockState> {
    if keep.is_empty() {
        return Err(param_err!("the kept block set is empty"));
    }
    let mut dims = Vec::with_capacity(keep.len());
    for lambda in keep {
        if lambda.row_bound() != d || lambda.box_count() != n {
            return Err(param_err!("diagram {lambda} does not belong to N = {n}, d = {d}"));
        }
        let size = irrep_dim(lambda, d)?
            .to_usize()
            .ok_or_else(|| Error::Resource(alloc::format!("block {lambda} is too large to store")))?;
        dims.push(size);
    }
    let total: f64 = dims.iter().map(|&s| s as f64).sum();
    let blocks = keep
        .iter()
        .zip(dims)
        .map(|(l, s)| {
            let block = Block {
                weight: s as f64 / total,
                matrix: BlockMatrix::Diagonal(vec![1.0 / s as f64; s]),
            };
            (l.clone(), block)
        })
        .collect();
    Ok(BlockState {
        n,
        d,
        blocks,
        multiplicity_free: false,
    })
}

/// Exact error of a truncation protocol together with its tail-mass bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    /// `e_N = ½‖ρ^{⊗N} − D∘E(ρ^{⊗N})‖₁`.
    pub exact_error: f64,
    /// `Σ_{λ∉keep} q_λ`, an upper bound on `e_N`.
    pub tail_mass: f64,
    /// `½ Σ_{λ∉keep} q_λ`, a lower bound on `e_N` for block truncations.
    pub lower_bound: f64,
}

/// Runs encode then decode on `ρ^{⊗N}` and measures the trace distance to the
/// input. `dump` defaults to the maximally mixed state on the kept blocks.
pub fn exact_protocol_error(
    n: u32,
    spectrum: &Spectrum,
    orientation: Orientation,
    keep: &BTreeSet<YoungDiagram>,
    dump: Option<&BlockState>,
) -> Result<ErrorReport> {
    let state = product_state(spectrum, orientation, n)?;
    let default_dump;
    let dump = match dump {
        Some(s) => s,
        None => {
            default_dump = maximally_mixed_dump(n, spectrum.dim(), keep)?;
            &default_dump
        }
    };
    let decoded = decode(&encode(&state, keep, dump)?)?;
    let exact_error = trace_distance(&state, &decoded)?;
    let tail_mass = state
        .blocks
        .iter()
        .filter(|(l, _)| !keep.contains(*l))
        .map(|(_, b)| b.weight)
        .sum();
    Ok(ErrorReport {
        exact_error,
        tail_mass,
        lower_bound: 0.5 * tail_mass,
    })
}

fn unit_f64<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A random permutation-invariant state over every diagram of `Y_{N,d}`:
/// uniform random weights and blocks `G G† / tr(G G†)` with `G` having
/// independent entries uniform on the unit square.
pub fn random_invariant_state<R: RngCore + ?Sized>(n: u32, d: usize, rng: &mut R) -> Result<BlockState> {
    let diagrams = enumerate_diagrams(n, d, d)?;
    let raw: Vec<f64> = diagrams.iter().map(|_| unit_f64(rng) + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    let mut blocks = BTreeMap::new();
    for (lambda, w) in diagrams.into_iter().zip(raw) {
        let size = irrep_dim(&lambda, d)?
            .to_usize()
            .ok_or_else(|| Error::Resource(alloc::format!("block {lambda} is too large to store")))?;
        let mut g = CMatrix::zeros(size);
        for i in 0..size {
            for j in 0..size {
                g[(i, j)] = C64::new(2.0 * unit_f64(rng) - 1.0, 2.0 * unit_f64(rng) - 1.0);
            }
        }
        let gg = g.matmul(&g.adjoint());
        let tr = gg.trace().re;
        let m = HermitianMatrix::new(gg.scale(1.0 / tr))?;
        blocks.insert(
            lambda,
            Block {
                weight: w / total,
                matrix: BlockMatrix::Dense(m),
            },
        );
    }
    Ok(BlockState {
        n,
        d,
        blocks,
        multiplicity_free: false,
    })
}

/// Minimum eigenvalue over every block (used by invariant checks).
pub fn min_block_eigenvalue(state: &BlockState) -> Result<f64> {
    let mut min = f64::INFINITY;
    for b in state.blocks.values() {
        let e = match &b.matrix {
            BlockMatrix::Diagonal(v) => v.iter().copied().fold(f64::INFINITY, f64::min),
            BlockMatrix::Dense(h) => hermitian_eigenvalues(h.as_matrix())?[0],
        };
        min = min.min(e);
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qubit_keep(n: u32, two_js: &[u32]) -> BTreeSet<YoungDiagram> {
        two_js
            .iter()
            .map(|&t| YoungDiagram::from_two_j(n, t).unwrap())
            .collect()
    }

    fn all_keep(state: &BlockState) -> BTreeSet<YoungDiagram> {
        state.blocks().keys().cloned().collect()
    }

    #[test]
    fn two_copy_weights() {
        let s = product_state(&Spectrum::qubit(0.75).unwrap(), Orientation::Identity, 2).unwrap();
        let w = s.weights();
        assert!((w[0].1 - 0.8125).abs() < 1e-15);
        assert!((w[1].1 - 0.1875).abs() < 1e-15);
    }

    #[test]
    fn four_copy_weights_and_tail() {
        let s = product_state(&Spectrum::qubit(0.75).unwrap(), Orientation::Identity, 4).unwrap();
        let w: Vec<f64> = s.weights().iter().map(|x| x.1).collect();
        for (got, want) in w.iter().zip([0.47265625, 0.45703125, 0.0703125]) {
            assert!((got - want).abs() < 1e-14);
        }
        let keep = qubit_keep(4, &[4, 2]);
        let r = exact_protocol_error(4, &Spectrum::qubit(0.75).unwrap(), Orientation::Identity, &keep, None).unwrap();
        assert!((r.tail_mass - 0.0703125).abs() < 1e-14);
        assert!(r.exact_error <= r.tail_mass + 1e-15);
        assert!(r.exact_error >= r.lower_bound - 1e-15);
    }

    #[test]
    fn pure_state_is_symmetric() {
        for n in [1u32, 5, 12] {
            let s = product_state(&Spectrum::qubit(1.0).unwrap(), Orientation::Identity, n).unwrap();
            assert_eq!(s.blocks().len(), 1);
            let (l, b) = s.blocks().iter().next().unwrap();
            assert_eq!(l.rows(), &[n, 0]);
            assert!((b.weight - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn maximally_mixed_weights() {
        let n = 9;
        for two_j in (1..=n).step_by(2) {
            let l = YoungDiagram::from_two_j(n, two_j).unwrap();
            let m = multiplicity_dim(&l).to_f64().unwrap();
            let want = (two_j + 1) as f64 * m / 512.0;
            assert!((qubit_weight(n, 0.5, two_j).unwrap() - want).abs() < 1e-15);
        }
    }

    #[test]
    fn qubit_weights_sum_to_one() {
        for n in [1u32, 2, 7, 50, 121, 200] {
            for p in [0.5, 0.6, 0.75, 0.9, 1.0] {
                let s: f64 = (n % 2..=n).step_by(2).map(|t| qubit_weight(n, p, t).unwrap()).sum();
                assert!((s - 1.0).abs() < 1e-12, "n={n} p={p} sum={s}");
            }
        }
    }

    #[test]
    fn binomial_form_agrees() {
        for n in [2u32, 3, 10, 51, 200] {
            for p in [0.51, 0.6, 0.75, 0.9, 0.99] {
                for t in (n % 2..=n).step_by(2) {
                    let a = qubit_weight(n, p, t).unwrap();
                    let b = qubit_weight_binomial(n, p, t).unwrap();
                    if a > 1e-250 {
                        assert!((a - b).abs() <= 1e-10 * a, "n={n} p={p} 2j={t}: {a} vs {b}");
                    }
                }
            }
        }
        assert!(qubit_weight_binomial(4, 0.5, 0).is_err());
        assert!(qubit_weight(4, 0.4, 0).is_err());
    }

    #[test]
    fn qudit_weights_normalised() {
        let spec = Spectrum::new(vec![0.5, 0.3, 0.2]).unwrap();
        let s = product_state(&spec, Orientation::Identity, 3).unwrap();
        let w = s.weights();
        assert!((w[0].1 - 0.41).abs() < 1e-14);
        assert!((w[1].1 - 0.56).abs() < 1e-14);
        assert!((w[2].1 - 0.03).abs() < 1e-14);
        for b in s.blocks().values() {
            assert!((b.matrix.trace() - 1.0).abs() < 1e-12);
        }
        let s = product_state(&spec, Orientation::Identity, 20).unwrap();
        assert!((s.total_weight() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rank_deficient_qudit() {
        let spec = Spectrum::new(vec![0.7, 0.3, 0.0]).unwrap();
        let s = product_state(&spec, Orientation::Identity, 6).unwrap();
        assert!(s.blocks().keys().all(|l| l.depth() <= 2 && l.row_bound() == 3));
        assert!((s.total_weight() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotated_qudit_is_unsupported() {
        let spec = Spectrum::new(vec![0.5, 0.3, 0.2]).unwrap();
        let r = product_state(&spec, Orientation::Bloch(BlochVector::new(0.1, 0.2)), 3);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn channel_contracts() {
        let spec = Spectrum::qubit(0.75).unwrap();
        let s = product_state(&spec, Orientation::Identity, 4).unwrap();
        let empty = BTreeSet::new();
        let dump = maximally_mixed_dump(4, 2, &qubit_keep(4, &[4])).unwrap();
        assert!(encode(&s, &empty, &dump).is_err());
        let r = encode(&s, &qubit_keep(4, &[2]), &dump);
        assert!(matches!(r, Err(Error::Contract(_))));
        let full = all_keep(&s);
        let enc = encode(&s, &full, &dump).unwrap();
        assert!(enc.is_multiplicity_free());
        assert!(trace_distance(&s, &enc).is_err());
        let dec = decode(&enc).unwrap();
        assert_eq!(trace_distance(&s, &dec).unwrap(), 0.0);
        let other = product_state(&spec, Orientation::Identity, 3).unwrap();
        assert!(trace_distance(&s, &other).is_err());
    }

    #[test]
    fn classical_distances() {
        let l = YoungDiagram::new(vec![2, 0]).unwrap();
        let s = YoungDiagram::new(vec![1, 1]).unwrap();
        let one = |w: f64| Block {
            weight: w,
            matrix: BlockMatrix::Diagonal(vec![1.0]),
        };
        let three = |w: f64| Block {
            weight: w,
            matrix: BlockMatrix::Diagonal(vec![1.0 / 3.0; 3]),
        };
        let a = BlockState::from_blocks(2, 2, [(l.clone(), three(0.8)), (s.clone(), one(0.2))].into(), false).unwrap();
        let b = BlockState::from_blocks(2, 2, [(l.clone(), three(0.6)), (s.clone(), one(0.4))].into(), false).unwrap();
        assert!((trace_distance(&a, &b).unwrap() - 0.2).abs() < 1e-15);

        let sq = YoungDiagram::new(vec![1, 0]).unwrap();
        let diag = |v: Vec<f64>| Block {
            weight: 1.0,
            matrix: BlockMatrix::Diagonal(v),
        };
        let a = BlockState::from_blocks(1, 2, [(sq.clone(), diag(vec![0.8, 0.2]))].into(), false).unwrap();
        let b = BlockState::from_blocks(1, 2, [(sq, diag(vec![0.6, 0.4]))].into(), false).unwrap();
        assert!((trace_distance(&a, &b).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn from_blocks_validates() {
        let l = YoungDiagram::new(vec![1, 0]).unwrap();
        let bad = Block {
            weight: 1.0,
            matrix: BlockMatrix::Diagonal(vec![1.2, -0.2]),
        };
        assert!(BlockState::from_blocks(1, 2, [(l.clone(), bad)].into(), false).is_err());
        let wrong_size = Block {
            weight: 1.0,
            matrix: BlockMatrix::Diagonal(vec![1.0]),
        };
        assert!(BlockState::from_blocks(1, 2, [(l.clone(), wrong_size)].into(), false).is_err());
        let light = Block {
            weight: 0.5,
            matrix: BlockMatrix::Diagonal(vec![0.5, 0.5]),
        };
        assert!(BlockState::from_blocks(1, 2, [(l, light)].into(), false).is_err());
    }

    #[test]
    fn random_states_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (n, d) in [(4u32, 2usize), (5, 2), (3, 3)] {
            let s = random_invariant_state(n, d, &mut rng).unwrap();
            assert!((s.total_weight() - 1.0).abs() < 1e-12);
            assert!(min_block_eigenvalue(&s).unwrap() > -1e-12);
            BlockState::from_blocks(n, d, s.blocks().clone(), false).unwrap();
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn zero_error_round_trip(seed in any::<u64>(), n in 1u32..=8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_invariant_state(n, 2, &mut rng).unwrap();
            let keep = all_keep(&s);
            let dump = maximally_mixed_dump(n, 2, &keep).unwrap();
            let back = decode(&encode(&s, &keep, &dump).unwrap()).unwrap();
            prop_assert!(trace_distance(&s, &back).unwrap() < 1e-10);
        }

        #[test]
        fn orientation_does_not_change_error(
            theta in 0.0f64..core::f64::consts::PI, phi in -core::f64::consts::PI..core::f64::consts::PI, p in 0.5f64..=1.0, n in 2u32..=14, cut in 0u32..6,
        ) {
            let spec = Spectrum::qubit(p).unwrap();
            let two_js: Vec<u32> = (n % 2..=n).step_by(2).filter(|&t| t + 2 * cut >= n).collect();
            prop_assume!(!two_js.is_empty());
            let keep = qubit_keep(n, &two_js);
            let flat = exact_protocol_error(n, &spec, Orientation::Identity, &keep, None).unwrap();
            let turned = exact_protocol_error(n, &spec, Orientation::Bloch(BlochVector::new(theta, phi)), &keep, None).unwrap();
            prop_assert!((flat.exact_error - turned.exact_error).abs() < 1e-10);
        }

        #[test]
        fn trace_distance_is_a_metric(seed in any::<u64>(), n in 1u32..=6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_invariant_state(n, 2, &mut rng).unwrap();
            let b = random_invariant_state(n, 2, &mut rng).unwrap();
            let c = random_invariant_state(n, 2, &mut rng).unwrap();
            let ab = trace_distance(&a, &b).unwrap();
            prop_assert_eq!(ab, trace_distance(&b, &a).unwrap());
            prop_assert!((0.0..=1.0 + 1e-12).contains(&ab));
            prop_assert!(trace_distance(&a, &a).unwrap() < 1e-12);
            let ac = trace_distance(&a, &c).unwrap();
            let cb = trace_distance(&c, &b).unwrap();
            prop_assert!(ab <= ac + cb + 1e-10);
        }

        #[test]
        fn larger_keep_sets_never_hurt(p in 0.5f64..=1.0, n in 2u32..=30, seed in any::<u64>()) {
            let spec = Spectrum::qubit(p).unwrap();
            let mut order: Vec<u32> = (n % 2..=n).step_by(2).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..order.len()).rev() {
                let k = (rand_core::RngCore::next_u64(&mut rng) % (i as u64 + 1)) as usize;
                order.swap(i, k);
            }
            let mut last = f64::INFINITY;
            for len in 1..=order.len() {
                let keep = qubit_keep(n, &order[..len]);
                let e = exact_protocol_error(n, &spec, Orientation::Identity, &keep, None).unwrap().exact_error;
                prop_assert!(e <= last + 1e-12);
                last = e;
            }
            prop_assert!(last < 1e-12);
        }
    }
}
