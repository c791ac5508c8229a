//! Dense brute-force reference for small `N`.
//!
//! Builds `ρ^{⊗N}` as an explicit `d^N × d^N` matrix and recovers the block
//! structure independently of the block simulator: for qubits through a Schur
//! basis obtained by coupling one spin-½ at a time with Clebsch–Gordan
//! coefficients (qubit 1 with 2, the result with 3, and so on), and for
//! qudits through isotypic projectors `P_λ = (m_λ/N!) Σ_π χ_λ(π) V_π` built
//! from explicit permutation operators and Murnaghan–Nakayama characters.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand_core::RngCore;

use crate::blocksim::{
    exact_protocol_error, maximally_mixed_dump, product_state, trace_distance, Block, BlockMatrix, BlockState,
    Orientation, WEIGHT_FLOOR,
};
use crate::error::{param_err, Error, Result};
use crate::linalg::{CMatrix, HermitianMatrix, C64};
use crate::spectrum::Spectrum;
use crate::su2::{clebsch_gordan, wigner_d, WignerRotation};
use crate::young::{enumerate_diagrams, irrep_dim, multiplicity_dim, YoungDiagram};

/// Largest `d^N` for which the dense state is built.
pub const DENSE_CAP: usize = 4096;
/// Largest `d^N` for operations cubic in the dimension (projections and
/// dense eigendecompositions).
pub const CUBIC_CAP: usize = 512;
/// Tolerance on the block structure of a dense permutation-invariant state.
pub const STRUCTURE_TOLERANCE: f64 = 1e-10;

fn dense_dim(d: usize, n: u32, cap: usize) -> Result<usize> {
    let mut size: usize = 1;
    for _ in 0..n {
        size = size.saturating_mul(d);
        if size > cap {
            return Err(Error::Resource(format!("{d}^{n} exceeds the dense size cap {cap}")));
        }
    }
    Ok(size)
}

/// The single-copy density matrix.
pub fn single_copy_state(spectrum: &Spectrum, orientation: Orientation) -> Result<CMatrix> {
    let diag = CMatrix::from_diag(spectrum.probs());
    match orientation {
        Orientation::Identity => Ok(diag),
        Orientation::Bloch(b) => {
            if spectrum.dim() != 2 {
                return Err(Error::Unsupported(format!(
                    "rotated states are only modelled for qubits (d = {})",
                    spectrum.dim()
                )));
            }
            let u = wigner_d(&WignerRotation::new(b.phi, b.theta, 0.0, 1));
            Ok(u.matmul(&diag).matmul(&u.adjoint()))
        }
    }
}

/// `ρ^{⊗N}` as a dense matrix; the first copy is the most significant digit.
pub fn dense_product_state(spectrum: &Spectrum, orientation: Orientation, n: u32) -> Result<HermitianMatrix> {
    dense_dim(spectrum.dim(), n, DENSE_CAP)?;
    let rho = single_copy_state(spectrum, orientation)?;
    let mut out = CMatrix::identity(1);
    for _ in 0..n {
        out = out.kron(&rho);
    }
    HermitianMatrix::new(out)
}

/// A sparse real vector: `(index, value)` pairs sorted by index.
pub type SparseVector = Vec<(usize, f64)>;

/// The `2j + 1` states `|j, m, α⟩`, `m = j, …, −j`, of one multiplicity copy.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurGroup {
    pub two_j: u32,
    pub vectors: Vec<SparseVector>,
}

/// Orthonormal basis of `(C²)^{⊗N}` grouped by total spin and multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurBasis {
    pub n: u32,
    pub groups: Vec<SchurGroup>,
}

impl SchurBasis {
    /// The basis as columns of a unitary, in group order.
    pub fn isometry(&self) -> CMatrix {
        let dim = 1usize << self.n;
        let mut b = CMatrix::zeros(dim);
        let mut col = 0;
        for g in &self.groups {
            for v in &g.vectors {
                for &(i, x) in v {
                    b[(i, col)] = C64::new(x, 0.0);
                }
                col += 1;
            }
        }
        b
    }

    /// Column offsets of the groups inside [`SchurBasis::isometry`].
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.groups
            .iter()
            .map(|g| {
                let o = acc;
                acc += g.vectors.len();
                o
            })
            .collect()
    }
}

/// Couples `N` spin-½ particles one at a time.
pub fn schur_basis_qubits(n: u32) -> Result<SchurBasis> {
    if !(1..=12).contains(&n) {
        return Err(param_err!("the qubit Schur basis is built for 1 <= N <= 12, got {n}"));
    }
    let mut groups = vec![SchurGroup {
        two_j: 1,
        vectors: vec![vec![(0, 1.0)], vec![(1, 1.0)]],
    }];
    for _ in 1..n {
        let mut next = Vec::new();
        for g in &groups {
            let t = g.two_j;
            let targets: &[u32] = if t == 0 { &[1] } else { &[t + 1, t - 1] };
            for &tt in targets {
                let mut vectors = Vec::with_capacity(tt as usize + 1);
                for k in 0..=tt {
                    let tm = tt as i32 - 2 * k as i32;
                    let mut v: SparseVector = Vec::new();
                    for (bit, tm2) in [(0usize, 1i32), (1, -1)] {
                        let tm1 = tm - tm2;
                        if tm1.unsigned_abs() > t {
                            continue;
                        }
                        let c = clebsch_gordan(t, tm1, 1, tm2, tt, tm)?;
                        if c == 0.0 {
                            continue;
                        }
                        let k1 = ((t as i32 - tm1) / 2) as usize;
                        v.extend(g.vectors[k1].iter().map(|&(i, x)| (2 * i + bit, c * x)));
                    }
                    v.sort_by_key(|e| e.0);
                    vectors.push(v);
                }
                next.push(SchurGroup { two_j: tt, vectors });
            }
        }
        groups = next;
    }
    Ok(SchurBasis { n, groups })
}

fn sub_block(w: &CMatrix, r0: usize, c0: usize, size: usize) -> CMatrix {
    let mut out = CMatrix::zeros(size);
    for i in 0..size {
        for j in 0..size {
            out[(i, j)] = w[(r0 + i, c0 + j)];
        }
    }
    out
}

fn max_abs_block(w: &CMatrix, r0: usize, rn: usize, c0: usize, cn: usize) -> f64 {
    let mut m: f64 = 0.0;
    for i in r0..r0 + rn {
        for j in c0..c0 + cn {
            m = m.max(w[(i, j)].norm());
        }
    }
    m
}

/// Projects a dense permutation-invariant qubit state onto the Schur basis
/// and reads off `q_j` and `ρ_j`, checking on the way that coherences between
/// different blocks vanish and that the multiplicity factor is `I/m_j`.
pub fn extract_blocks(dense: &HermitianMatrix, basis: &SchurBasis) -> Result<BlockState> {
    let n = basis.n;
    let dim = dense_dim(2, n, CUBIC_CAP)?;
    if dense.size() != dim {
        return Err(param_err!("dense state has size {}, expected {dim}", dense.size()));
    }
    let b = basis.isometry();
    let w = b.adjoint().matmul(dense.as_matrix()).matmul(&b);
    let offsets = basis.offsets();
    let groups = &basis.groups;
    for (gi, g) in groups.iter().enumerate() {
        let gs = g.vectors.len();
        for (hi, h) in groups.iter().enumerate() {
            if gi == hi {
                continue;
            }
            let hs = h.vectors.len();
            let off = max_abs_block(&w, offsets[gi], gs, offsets[hi], hs);
            if off > STRUCTURE_TOLERANCE {
                return Err(Error::OracleMismatch(format!(
                    "coherence {off:e} between multiplicity copies {gi} (2j={}) and {hi} (2j={})",
                    g.two_j, h.two_j
                )));
            }
            if g.two_j == h.two_j && hi > gi {
                let diff = sub_block(&w, offsets[gi], offsets[gi], gs).max_abs_diff(&sub_block(
                    &w,
                    offsets[hi],
                    offsets[hi],
                    hs,
                ));
                if diff > STRUCTURE_TOLERANCE {
                    return Err(Error::OracleMismatch(format!(
                        "multiplicity factor of 2j={} is not maximally mixed (deviation {diff:e})",
                        g.two_j
                    )));
                }
            }
        }
    }
    let mut sums: alloc::collections::BTreeMap<u32, CMatrix> = alloc::collections::BTreeMap::new();
    for (gi, g) in groups.iter().enumerate() {
        let s = g.vectors.len();
        let blk = sub_block(&w, offsets[gi], offsets[gi], s);
        let entry = sums.entry(g.two_j).or_insert_with(|| CMatrix::zeros(s));
        *entry = entry.add(&blk);
    }
    let mut blocks = alloc::collections::BTreeMap::new();
    for (two_j, sigma) in sums {
        let weight = sigma.trace().re;
        let lambda = YoungDiagram::from_two_j(n, two_j)?;
        let block = if weight < WEIGHT_FLOOR {
            Block {
                weight: 0.0,
                matrix: BlockMatrix::Diagonal(vec![0.0; sigma.size()]),
            }
        } else {
            Block {
                weight,
                matrix: BlockMatrix::Dense(HermitianMatrix::new(sigma.scale(1.0 / weight))?),
            }
        };
        blocks.insert(lambda, block);
    }
    BlockState::from_blocks(n, 2, blocks, false)
}

/// `D∘E(ρ)` evaluated on a dense qubit state through the coupled basis.
fn dense_channel_qubits(
    dense: &HermitianMatrix,
    basis: &SchurBasis,
    keep: &BTreeSet<YoungDiagram>,
    dump: &BlockState,
) -> Result<CMatrix> {
    let n = basis.n;
    let b = basis.isometry();
    let w = b.adjoint().matmul(dense.as_matrix()).matmul(&b);
    let offsets = basis.offsets();
    let mut kept_j = BTreeSet::new();
    for lambda in keep {
        kept_j.insert(
            lambda
                .two_j()
                .ok_or_else(|| param_err!("{lambda} is not a qubit diagram"))?,
        );
    }
    // traced-out multiplicity: σ_j = Σ_α ⟨j α| ρ |j α⟩
    let mut sigma: alloc::collections::BTreeMap<u32, (CMatrix, usize)> = alloc::collections::BTreeMap::new();
    for (gi, g) in basis.groups.iter().enumerate() {
        if !kept_j.contains(&g.two_j) {
            continue;
        }
        let s = g.vectors.len();
        let blk = sub_block(&w, offsets[gi], offsets[gi], s);
        let e = sigma.entry(g.two_j).or_insert_with(|| (CMatrix::zeros(s), 0));
        e.0 = e.0.add(&blk);
        e.1 += 1;
    }
    let kept_mass: f64 = sigma.values().map(|(m, _)| m.trace().re).sum();
    let tail = 1.0 - kept_mass;
    let dim = 1usize << n;
    let mut out = CMatrix::zeros(dim);
    for (gi, g) in basis.groups.iter().enumerate() {
        let Some((sig, mult)) = sigma.get(&g.two_j) else {
            continue;
        };
        let mut blk = sig.scale(1.0 / *mult as f64);
        let lambda = YoungDiagram::from_two_j(n, g.two_j)?;
        if let Some(db) = dump.blocks().get(&lambda) {
            blk = blk.add(&db.matrix.to_dense().scale(tail * db.weight / *mult as f64));
        }
        let o = offsets[gi];
        for i in 0..blk.size() {
            for j in 0..blk.size() {
                out[(o + i, o + j)] = blk[(i, j)];
            }
        }
    }
    Ok(b.matmul(&out).matmul(&b.adjoint()))
}

/// Tensor-position permutation of a base-`d` index: digit `k` moves to `perm[k]`.
fn permute_index(mut i: usize, perm: &[usize], d: usize) -> usize {
    let n = perm.len();
    let mut digits = vec![0usize; n];
    for k in (0..n).rev() {
        digits[k] = i % d;
        i /= d;
    }
    let mut moved = vec![0usize; n];
    for k in 0..n {
        moved[perm[k]] = digits[k];
    }
    moved.iter().fold(0, |acc, &x| acc * d + x)
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        cycles.push(len);
    }
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    cycles
}

/// `χ_λ(μ)` by the Murnaghan–Nakayama rule on beta numbers: removing a rim
/// hook of length `k` moves one bead from position `β` to `β − k`, with sign
/// `(−1)^{beads jumped over}`.
pub fn symmetric_group_character(lambda: &YoungDiagram, cycle_type: &[usize]) -> i64 {
    let parts: Vec<usize> = lambda
        .rows()
        .iter()
        .take_while(|&&r| r > 0)
        .map(|&r| r as usize)
        .collect();
    let l = parts.len();
    let beta: Vec<usize> = parts.iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    mn_rec(&beta, cycle_type)
}

fn mn_rec(beta: &[usize], mu: &[usize]) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.to_vec();
        next[idx] = target;
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&next, rest);
    }
    total
}

/// Dense isotypic projectors `P_λ` for every `λ ∈ Y_{N,d}` (real matrices).
pub fn isotypic_projectors(n: u32, d: usize) -> Result<Vec<(YoungDiagram, CMatrix)>> {
    let dim = dense_dim(d, n, CUBIC_CAP)?;
    let perms = all_permutations(n as usize);
    let mut nfact = 1.0;
    for k in 2..=n {
        nfact *= k as f64;
    }
    let maps: Vec<(Vec<usize>, Vec<usize>)> = perms
        .iter()
        .map(|p| (cycle_type(p), (0..dim).map(|i| permute_index(i, p, d)).collect()))
        .collect();
    let mut out = Vec::new();
    for lambda in enumerate_diagrams(n, d, d)? {
        let m = multiplicity_dim(&lambda).to_f64().unwrap_or(f64::INFINITY);
        let mut p = CMatrix::zeros(dim);
        for (ct, map) in &maps {
            let chi = symmetric_group_character(&lambda, ct) as f64;
            if chi == 0.0 {
                continue;
            }
            let c = chi * m / nfact;
            for (i, &j) in map.iter().enumerate() {
                p[(j, i)] += C64::new(c, 0.0);
            }
        }
        out.push((lambda, p));
    }
    Ok(out)
}

/// `q_λ = (m_λ/N!) Σ_π χ_λ(π) tr(V_π ρ^{⊗N})`, with every permutation trace
/// taken explicitly on the dense product state.
pub fn character_projection_weights(spectrum: &Spectrum, n: u32) -> Result<Vec<(YoungDiagram, f64)>> {
    let d = spectrum.dim();
    let dim = dense_dim(d, n, CUBIC_CAP)?;
    let dense = dense_product_state(spectrum, Orientation::Identity, n)?;
    let rho = dense.as_matrix();
    let perms = all_permutations(n as usize);
    let traces: Vec<(Vec<usize>, f64)> = perms
        .iter()
        .map(|p| {
            let t: f64 = (0..dim).map(|i| rho[(permute_index(i, p, d), i)].re).sum();
            (cycle_type(p), t)
        })
        .collect();
    let nfact = perms.len() as f64;
    let mut out = Vec::new();
    for lambda in enumerate_diagrams(n, d, d)? {
        let m = multiplicity_dim(&lambda).to_f64().unwrap_or(f64::INFINITY);
        let s: f64 = traces
            .iter()
            .map(|(ct, t)| symmetric_group_character(&lambda, ct) as f64 * t)
            .sum();
        out.push((lambda, m * s / nfact));
    }
    out.reverse();
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

/// `½‖ρ^{⊗N} − D∘E(ρ^{⊗N})‖₁` evaluated in the full `d^N`-dimensional space.
///
/// Qubits go through the coupled basis and accept any dump state. Qudits go
/// through the isotypic projectors and only support the maximally mixed
/// dump, which decodes to `Σ_{λ∈keep} P_λ / (d_enc m_λ)`.
pub fn dense_protocol_error(
    n: u32,
    spectrum: &Spectrum,
    orientation: Orientation,
    keep: &BTreeSet<YoungDiagram>,
    dump: Option<&BlockState>,
) -> Result<f64> {
    if keep.is_empty() {
        return Err(param_err!("the kept block set is empty"));
    }
    let d = spectrum.dim();
    dense_dim(d, n, CUBIC_CAP)?;
    let dense = dense_product_state(spectrum, orientation, n)?;
    let output = if d == 2 {
        let basis = schur_basis_qubits(n)?;
        let default_dump;
        let dump = match dump {
            Some(s) => s,
            None => {
                default_dump = maximally_mixed_dump(n, 2, keep)?;
                &default_dump
            }
        };
        dense_channel_qubits(&dense, &basis, keep, dump)?
    } else {
        if dump.is_some() {
            return Err(Error::Unsupported(
                "qudit dense checks only use the maximally mixed dump".into(),
            ));
        }
        let projectors = isotypic_projectors(n, d)?;
        let rho = dense.as_matrix();
        let mut d_enc = 0.0;
        for lambda in keep {
            d_enc += irrep_dim(lambda, d)?.to_f64().unwrap_or(f64::INFINITY);
        }
        let mut out = CMatrix::zeros(rho.size());
        let mut kept_mass = 0.0;
        for (lambda, p) in &projectors {
            if keep.contains(lambda) {
                let blk = p.matmul(rho).matmul(p);
                kept_mass += blk.trace().re;
                out = out.add(&blk);
            }
        }
        let tail = 1.0 - kept_mass;
        for (lambda, p) in &projectors {
            if keep.contains(lambda) {
                let m = multiplicity_dim(lambda).to_f64().unwrap_or(f64::INFINITY);
                out = out.add(&p.scale(tail / (d_enc * m)));
            }
        }
        out
    };
    let diff = HermitianMatrix::new(dense.as_matrix().sub(&output))?;
    Ok(0.5 * diff.trace_norm()?)
}

/// Symmetrises `G G† / tr` over `S_N` to give a random dense
/// permutation-invariant state.
pub fn random_symmetric_dense_state<R: RngCore + ?Sized>(n: u32, d: usize, rng: &mut R) -> Result<HermitianMatrix> {
    let dim = dense_dim(d, n, CUBIC_CAP)?;
    let mut unit = || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * 2.0 - 1.0;
    let mut g = CMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = C64::new(unit(), unit());
        }
    }
    let r = g.matmul(&g.adjoint());
    let perms = all_permutations(n as usize);
    let mut out = CMatrix::zeros(dim);
    for p in &perms {
        let map: Vec<usize> = (0..dim).map(|i| permute_index(i, p, d)).collect();
        for i in 0..dim {
            for j in 0..dim {
                out[(map[i], map[j])] += r[(i, j)];
            }
        }
    }
    let tr = out.trace().re;
    HermitianMatrix::new(out.scale(1.0 / tr))
}

/// One line of an oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison {
    pub name: alloc::string::String,
    pub max_diff: f64,
}

/// Block simulator versus dense reference.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub n: u32,
    pub d: usize,
    pub comparisons: Vec<OracleComparison>,
}

impl OracleReport {
    pub fn max_diff(&self) -> f64 {
        self.comparisons.iter().map(|c| c.max_diff).fold(0.0, f64::max)
    }

    pub fn passed(&self, tolerance: f64) -> bool {
        self.comparisons.iter().all(|c| c.max_diff < tolerance)
    }
}

fn random_keep<R: RngCore + ?Sized>(all: &[YoungDiagram], rng: &mut R) -> BTreeSet<YoungDiagram> {
    let mut keep: BTreeSet<YoungDiagram> = all.iter().filter(|_| rng.next_u64() & 1 == 1).cloned().collect();
    if keep.is_empty() {
        keep.insert(all[(rng.next_u64() % all.len() as u64) as usize].clone());
    }
    keep
}

/// Compares weights, blocks and protocol errors of the block simulator with
/// the dense reference. The keep sets are the full set, the set without the
/// smallest-weight block, and one random subset drawn from `rng`.
pub fn oracle_check<R: RngCore + ?Sized>(
    n: u32,
    spectrum: &Spectrum,
    orientation: Orientation,
    rng: &mut R,
) -> Result<OracleReport> {
    let d = spectrum.dim();
    dense_dim(d, n, CUBIC_CAP)?;
    let state = product_state(spectrum, orientation, n)?;
    let mut comparisons = Vec::new();
    let mut push = |name: &str, v: f64| {
        comparisons.push(OracleComparison {
            name: name.into(),
            max_diff: v,
        })
    };
    if d == 2 {
        let dense = dense_product_state(spectrum, orientation, n)?;
        let extracted = extract_blocks(&dense, &schur_basis_qubits(n)?)?;
        let mut wdiff: f64 = 0.0;
        let mut ediff: f64 = 0.0;
        for (lambda, block) in state.blocks() {
            wdiff = wdiff.max((block.weight - extracted.weight(lambda)).abs());
            if let Some(other) = extracted.blocks().get(lambda) {
                if block.weight > 0.0 && other.weight > 0.0 {
                    let a = block.matrix.eigenvalues()?;
                    let b = other.matrix.eigenvalues()?;
                    for (x, y) in a.iter().zip(&b) {
                        ediff = ediff.max((x - y).abs());
                    }
                }
            }
        }
        for (lambda, block) in extracted.blocks() {
            if !state.blocks().contains_key(lambda) {
                wdiff = wdiff.max(block.weight);
            }
        }
        push("weights", wdiff);
        push("block_spectra", ediff);
        push("block_trace_distance", trace_distance(&state, &extracted)?);
    } else {
        if orientation != Orientation::Identity {
            return Err(Error::Unsupported(format!(
                "rotated states are only modelled for qubits (d = {d})"
            )));
        }
        let reference = character_projection_weights(spectrum, n)?;
        let wdiff = reference
            .iter()
            .map(|(l, w)| (state.weight(l) - w).abs())
            .fold(0.0, f64::max);
        push("weights", wdiff);
    }
    let all: Vec<YoungDiagram> = state.blocks().keys().cloned().collect();
    let mut keeps: Vec<(&str, BTreeSet<YoungDiagram>)> = vec![("protocol_error_full", all.iter().cloned().collect())];
    if all.len() > 1 {
        let lightest = state
            .blocks()
            .iter()
            .min_by(|a, b| a.1.weight.total_cmp(&b.1.weight))
            .map(|(l, _)| l.clone());
        let mut trimmed: BTreeSet<YoungDiagram> = all.iter().cloned().collect();
        if let Some(l) = lightest {
            trimmed.remove(&l);
        }
        keeps.push(("protocol_error_trimmed", trimmed));
    }
    keeps.push(("protocol_error_random", random_keep(&all, rng)));
    for (name, keep) in keeps {
        let block = exact_protocol_error(n, spectrum, orientation, &keep, None)?.exact_error;
        let dense = dense_protocol_error(n, spectrum, orientation, &keep, None)?;
        push(name, (block - dense).abs());
    }
    Ok(OracleReport { n, d, comparisons })
}
