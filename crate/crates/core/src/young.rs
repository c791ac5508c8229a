//! Young diagrams, the dimensions of the blocks they label, and semistandard
//! tableaux.
//!
//! A diagram with `d` rows labels one block `R_λ ⊗ M_λ` of `(C^d)^{⊗N}`; `d_λ`
//! is the dimension of the unitary-group factor and `m_λ` that of the
//! symmetric-group factor. Both are computed exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{param_err, Result};

/// A partition `λ₁ ≥ λ₂ ≥ … ≥ λ_d ≥ 0`, padded with zeros to a fixed row bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.is_empty() {
            return Err(param_err!("a diagram needs at least one row"));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(param_err!("rows {rows:?} are not weakly decreasing"));
        }
        Ok(Self { rows })
    }

    /// The two-row diagram `(N/2 + j, N/2 − j)` for total spin `j = two_j / 2`.
    pub fn from_two_j(n: u32, two_j: u32) -> Result<Self> {
        if two_j > n || !(n - two_j).is_multiple_of(2) {
            return Err(param_err!("2j = {two_j} is not a valid spin for N = {n}"));
        }
        let low = (n - two_j) / 2;
        Ok(Self {
            rows: vec![low + two_j, low],
        })
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of boxes `N`.
    pub fn box_count(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// The padded length `d`.
    pub fn row_bound(&self) -> usize {
        self.rows.len()
    }

    /// Number of non-zero rows.
    pub fn depth(&self) -> usize {
        self.rows.iter().take_while(|&&r| r > 0).count()
    }

    /// `2j = λ₁ − λ₂` for two-row diagrams.
    pub fn two_j(&self) -> Option<u32> {
        match self.rows.as_slice() {
            [a, b] => Some(a - b),
            [a] => Some(*a),
            _ => None,
        }
    }

    /// The same diagram padded (or trimmed of trailing zeros) to `d` rows.
    pub fn padded(&self, d: usize) -> Result<Self> {
        if self.depth() > d {
            return Err(param_err!("{self} has more than {d} non-zero rows"));
        }
        let mut rows = self.rows.clone();
        rows.resize(d, 0);
        Ok(Self { rows })
    }

    /// Normalised row lengths `λ / N`.
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.box_count() as f64;
        self.rows
            .iter()
            .map(|&r| if n > 0.0 { r as f64 / n } else { 0.0 })
            .collect()
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` into at most `r` parts, padded to `d` rows, in
/// lexicographically decreasing order.
pub fn enumerate_diagrams(n: u32, d: usize, r: usize) -> Result<Vec<YoungDiagram>> {
    if r < 1 || r > d {
        return Err(param_err!("row limit r = {r} must satisfy 1 <= r <= d = {d}"));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    partitions_rec(n, r, n, &mut current, &mut out, d);
    Ok(out)
}

fn partitions_rec(
    remaining: u32,
    slots: usize,
    max_part: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<YoungDiagram>,
    d: usize,
) {
    if remaining == 0 {
        let mut rows = current.clone();
        rows.resize(d, 0);
        out.push(YoungDiagram { rows });
        return;
    }
    if slots == 0 {
        return;
    }
    // the largest part must be at least ceil(remaining / slots)
    let min_part = remaining.div_ceil(slots as u32);
    let hi = max_part.min(remaining);
    if hi < min_part {
        return;
    }
    for part in (min_part..=hi).rev() {
        current.push(part);
        partitions_rec(remaining - part, slots - 1, part, current, out, d);
        current.pop();
    }
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Dimension `d_λ` of the irreducible `GL(d)` representation labelled by `λ`.
pub fn irrep_dim(lambda: &YoungDiagram, d: usize) -> Result<BigUint> {
    let l = lambda.padded(d)?;
    let rows = l.rows();
    let mut num = BigUint::one();
    for i in 0..d {
        for j in i + 1..d {
            // λ_i − λ_j + j − i > 0 for any weakly decreasing λ
            num *= (rows[i] - rows[j]) as u64 + (j - i) as u64;
        }
    }
    let den = (1..d as u64).fold(BigUint::one(), |acc, k| acc * factorial(k));
    Ok(num / den)
}

/// Dimension `m_λ` of the symmetric-group irrep labelled by `λ`, i.e. the number
/// of standard Young tableaux of shape `λ`.
pub fn multiplicity_dim(lambda: &YoungDiagram) -> BigUint {
    let rows = lambda.rows();
    let d = rows.len();
    let n = lambda.box_count() as u64;
    let mut num = factorial(n);
    for i in 0..d {
        for j in i + 1..d {
            num *= (rows[i] - rows[j]) as u64 + (j - i) as u64;
        }
    }
    let den = rows.iter().enumerate().fold(BigUint::one(), |acc, (i, &r)| {
        acc * factorial(r as u64 + (d - 1 - i) as u64)
    });
    num / den
}

/// A semistandard tableau: rows weakly increase, columns strictly increase.
/// Entries are 1-based labels in `1..=d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    pub rows: Vec<Vec<u32>>,
}

impl Tableau {
    /// How many times each label `1..=d` occurs.
    pub fn content(&self, d: usize) -> Vec<u32> {
        let mut c = vec![0; d];
        for row in &self.rows {
            for &e in row {
                c[e as usize - 1] += 1;
            }
        }
        c
    }
}

/// Every semistandard tableau of shape `λ` with entries in `1..=d`, in a fixed
/// canonical order (depth-first, row-major, smallest entries first).
pub fn semistandard_tableaux(lambda: &YoungDiagram, d: usize) -> Vec<Tableau> {
    let shape: Vec<usize> = lambda
        .rows()
        .iter()
        .take_while(|&&r| r > 0)
        .map(|&r| r as usize)
        .collect();
    let mut out = Vec::new();
    if shape.len() > d {
        return out;
    }
    let mut rows: Vec<Vec<u32>> = shape.iter().map(|&len| Vec::with_capacity(len)).collect();
    fill_ssyt(&shape, d as u32, 0, &mut rows, &mut out);
    out
}

fn fill_ssyt(shape: &[usize], d: u32, row: usize, rows: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
    if row == shape.len() {
        out.push(Tableau { rows: rows.clone() });
        return;
    }
    let col = rows[row].len();
    if col == shape[row] {
        fill_ssyt(shape, d, row + 1, rows, out);
        return;
    }
    let left = if col > 0 { rows[row][col - 1] } else { 1 };
    let above = if row > 0 { rows[row - 1][col] + 1 } else { 1 };
    let lo = left.max(above);
    // leave room for the strictly increasing boxes further down this column
    let below = shape[row + 1..].iter().take_while(|&&len| len > col).count() as u32;
    let hi = d - below;
    for v in lo..=hi {
        rows[row].push(v);
        fill_ssyt(shape, d, row, rows, out);
        rows[row].pop();
    }
}
