//! SU(2) coupling coefficients and irreducible rotation matrices.
//!
//! Angular momenta are passed as doubled integers (`two_j = 2j`) so that
//! half-integers stay exact. Matrix rows and columns are ordered by
//! `m = j, j − 1, …, −j`, i.e. index `k` carries `m = j − k`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{param_err, Result};
use crate::linalg::{CMatrix, C64};
use crate::math::ln_factorial;

/// Largest `2j` accepted by the floating-point Clebsch–Gordan routine.
pub const CG_MAX_TWO_J: u32 = 60;

#[derive(Debug, Clone, Copy)]
struct CgArgs {
    j1: i64,
    m1: i64,
    j2: i64,
    m2: i64,
    j: i64,
    m: i64,
}

fn spin_ok(two_j: i64, two_m: i64) -> bool {
    two_j >= 0 && two_m.abs() <= two_j && (two_j - two_m) % 2 == 0
}

fn check_cg(two_j1: u32, two_m1: i32, two_j2: u32, two_m2: i32, two_j: u32, two_m: i32) -> Result<CgArgs> {
    let a = CgArgs {
        j1: two_j1 as i64,
        m1: two_m1 as i64,
        j2: two_j2 as i64,
        m2: two_m2 as i64,
        j: two_j as i64,
        m: two_m as i64,
    };
    if !spin_ok(a.j1, a.m1) || !spin_ok(a.j2, a.m2) || !spin_ok(a.j, a.m) {
        return Err(param_err!(
            "malformed quantum numbers (2j1,2m1,2j2,2m2,2J,2M) = ({two_j1},{two_m1},{two_j2},{two_m2},{two_j},{two_m})"
        ));
    }
    if a.j < (a.j1 - a.j2).abs() || a.j > a.j1 + a.j2 || (a.j1 + a.j2 + a.j) % 2 != 0 {
        return Err(param_err!(
            "(j1, j2, J) = ({two_j1}/2, {two_j2}/2, {two_j}/2) violates the triangle rule"
        ));
    }
    Ok(a)
}

/// The integer arguments of the Racah sum, all halved from doubled values.
struct Racah {
    /// factorial arguments of the square-root prefactor, paired with `2J+1`
    pref: [i64; 10],
    two_j_plus_1: i64,
    k_lo: i64,
    k_hi: i64,
    // denominator factorials: k, a−k, b−k, c−k, k+e, k+f
    a: i64,
    b: i64,
    c: i64,
    e: i64,
    f: i64,
}

fn racah(x: CgArgs) -> Racah {
    let h = |v: i64| v / 2;
    let a = h(x.j1 + x.j2 - x.j);
    let b = h(x.j1 - x.m1);
    let c = h(x.j2 + x.m2);
    let e = h(x.j - x.j2 + x.m1);
    let f = h(x.j - x.j1 - x.m2);
    Racah {
        pref: [
            h(x.j + x.j1 - x.j2),
            h(x.j - x.j1 + x.j2),
            h(x.j1 + x.j2 - x.j),
            h(x.j + x.m),
            h(x.j - x.m),
            h(x.j1 - x.m1),
            h(x.j1 + x.m1),
            h(x.j2 - x.m2),
            h(x.j2 + x.m2),
            // denominator (j1 + j2 + J + 1)!, stored as an index into pref
            h(x.j1 + x.j2 + x.j) + 1,
        ],
        two_j_plus_1: x.j + 1,
        k_lo: 0.max(-e).max(-f),
        k_hi: a.min(b).min(c),
        a,
        b,
        c,
        e,
        f,
    }
}

/// `⟨j1 m1; j2 m2 | J M⟩` in the Condon–Shortley convention, evaluated by the
/// Racah factorial sum in log space. Zero when `M ≠ m1 + m2`.
pub fn clebsch_gordan(two_j1: u32, two_m1: i32, two_j2: u32, two_m2: i32, two_j: u32, two_m: i32) -> Result<f64> {
    let x = check_cg(two_j1, two_m1, two_j2, two_m2, two_j, two_m)?;
    if two_j1.max(two_j2).max(two_j) > CG_MAX_TWO_J {
        return Err(param_err!("2j above {CG_MAX_TWO_J} is not supported"));
    }
    if x.m != x.m1 + x.m2 {
        return Ok(0.0);
    }
    let r = racah(x);
    let lf = |n: i64| ln_factorial(n as u64);
    let ln_pref =
        0.5 * ((r.two_j_plus_1 as f64).ln() + r.pref[..9].iter().map(|&n| lf(n)).sum::<f64>() - lf(r.pref[9]));
    let mut sum = 0.0;
    for k in r.k_lo..=r.k_hi {
        let ln_den = lf(k) + lf(r.a - k) + lf(r.b - k) + lf(r.c - k) + lf(k + r.e) + lf(k + r.f);
        let term = (ln_pref - ln_den).exp();
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// An exact Clebsch–Gordan coefficient `sign · sqrt(num / den)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCg {
    pub sign: i8,
    pub num: BigUint,
    pub den: BigUint,
}

impl ExactCg {
    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let ratio = self.num.to_f64().unwrap_or(f64::INFINITY) / self.den.to_f64().unwrap_or(f64::INFINITY);
        self.sign as f64 * ratio.sqrt()
    }
}

fn fact(n: i64) -> BigUint {
    (2..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Exact rational form of [`clebsch_gordan`]; used as a test oracle for small spins.
pub fn clebsch_gordan_exact(
    two_j1: u32,
    two_m1: i32,
    two_j2: u32,
    two_m2: i32,
    two_j: u32,
    two_m: i32,
) -> Result<ExactCg> {
    let x = check_cg(two_j1, two_m1, two_j2, two_m2, two_j, two_m)?;
    let zero = ExactCg {
        sign: 0,
        num: BigUint::zero(),
        den: BigUint::one(),
    };
    if x.m != x.m1 + x.m2 {
        return Ok(zero);
    }
    let r = racah(x);
    let mut pn = BigUint::from(r.two_j_plus_1 as u64);
    for &n in &r.pref[..9] {
        pn *= fact(n);
    }
    let pd = fact(r.pref[9]);

    let dens: Vec<BigUint> = (r.k_lo..=r.k_hi)
        .map(|k| fact(k) * fact(r.a - k) * fact(r.b - k) * fact(r.c - k) * fact(k + r.e) * fact(k + r.f))
        .collect();
    let lcm = dens.iter().fold(BigUint::one(), |acc, d| acc.lcm(d));
    let mut sn = BigInt::zero();
    for (i, d) in dens.iter().enumerate() {
        let t = BigInt::from_biguint(Sign::Plus, &lcm / d);
        if (r.k_lo + i as i64) % 2 == 0 {
            sn += t;
        } else {
            sn -= t;
        }
    }
    if sn.is_zero() {
        return Ok(zero);
    }
    let sign = if sn.is_negative() { -1 } else { 1 };
    let s_abs = sn.abs().to_biguint().unwrap_or_default();
    let num = pn * &s_abs * &s_abs;
    let den = pd * &lcm * &lcm;
    let g = num.gcd(&den);
    Ok(ExactCg {
        sign,
        num: num / &g,
        den: den / g,
    })
}

/// Euler angles `(α, β, γ)` (z-y-z convention) and the spin `2j` they act on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerRotation {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub two_j: u32,
}

impl WignerRotation {
    pub fn new(alpha: f64, beta: f64, gamma: f64, two_j: u32) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            two_j,
        }
    }
}

/// Real small-d matrix `d^j(β) = exp(−iβJ_y)` of size `2j+1`.
///
/// Built by adding one spin-½ at a time: each step couples `d^{j−½}` with
/// `d^{½}` through the stretched Clebsch–Gordan coefficients, which only
/// ever forms convex-like combinations and stays accurate for large `j`.
#[allow(clippy::needless_range_loop)]
pub fn small_d(two_j: u32, beta: f64) -> Vec<Vec<f64>> {
    let (s, c) = (0.5 * beta).sin_cos();
    let mut prev = vec![vec![1.0]];
    for t in 1..=two_j as usize {
        let mut next = vec![vec![0.0; t + 1]; t + 1];
        let tf = t as f64;
        let at = |k: isize, l: isize| -> f64 {
            if k < 0 || l < 0 || k as usize >= t || l as usize >= t {
                0.0
            } else {
                prev[k as usize][l as usize]
            }
        };
        for k in 0..=t {
            for l in 0..=t {
                let (ki, li) = (k as isize, l as isize);
                let (kf, lf) = (k as f64, l as f64);
                let v = ((tf - kf) * (tf - lf)).sqrt() * c * at(ki, li) - ((tf - kf) * lf).sqrt() * s * at(ki, li - 1)
                    + (kf * (tf - lf)).sqrt() * s * at(ki - 1, li)
                    + (kf * lf).sqrt() * c * at(ki - 1, li - 1);
                next[k][l] = v / tf;
            }
        }
        prev = next;
    }
    prev
}

/// The unitary `D^j(α, β, γ)` with entries `e^{−imα} d^j_{mm'}(β) e^{−im'γ}`.
pub fn wigner_d(rotation: &WignerRotation) -> CMatrix {
    let t = rotation.two_j as usize;
    let d = small_d(rotation.two_j, rotation.beta);
    let mut out = CMatrix::zeros(t + 1);
    for k in 0..=t {
        let m = 0.5 * (t as f64 - 2.0 * k as f64);
        for l in 0..=t {
            let mp = 0.5 * (t as f64 - 2.0 * l as f64);
            let phase = -(m * rotation.alpha + mp * rotation.gamma);
            let (sn, cs) = phase.sin_cos();
            out[(k, l)] = C64::new(cs, sn) * d[k][l];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Textbook factorial sum for d^j_{m'm}(β) (row m', column m), an
    /// independent route for small j.
    fn small_d_factorial(two_j: i64, two_row: i64, two_col: i64, beta: f64) -> f64 {
        let j = two_j as f64 / 2.0;
        let (mp, m) = (two_row as f64 / 2.0, two_col as f64 / 2.0);
        let f = |x: f64| libm::tgamma(x + 1.0);
        let pre = (f(j + mp) * f(j - mp) * f(j + m) * f(j - m)).sqrt();
        let (s, c) = (0.5 * beta).sin_cos();
        let mut sum = 0.0;
        let smin = 0f64.max(m - mp) as i64;
        let smax = (j + m).min(j - mp) as i64;
        for sidx in smin..=smax {
            let sv = sidx as f64;
            let num = if (mp - m + sv) as i64 % 2 == 0 { 1.0 } else { -1.0 };
            let den = f(j + m - sv) * f(sv) * f(mp - m + sv) * f(j - mp - sv);
            sum += num / den * c.powi((2.0 * j + m - mp - 2.0 * sv) as i32) * s.powi((mp - m + 2.0 * sv) as i32);
        }
        pre * sum
    }

    #[test]
    fn cg_singlet_and_stretched() {
        let v = clebsch_gordan(1, 1, 1, -1, 0, 0).unwrap();
        assert!((v - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let v = clebsch_gordan(1, -1, 1, 1, 0, 0).unwrap();
        assert!((v + core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((clebsch_gordan(1, 1, 1, 1, 2, 2).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(clebsch_gordan(1, 1, 1, 1, 2, 0).unwrap(), 0.0);
    }

    #[test]
    fn cg_rejects_malformed_numbers() {
        assert!(clebsch_gordan(1, 3, 1, 1, 2, 2).is_err());
        assert!(clebsch_gordan(2, 1, 1, 1, 2, 2).is_err());
        assert!(clebsch_gordan(1, 1, 1, 1, 6, 2).is_err());
        assert!(clebsch_gordan(2, 0, 2, 0, 3, 0).is_err());
        assert!(clebsch_gordan_exact(1, 1, 1, 1, 1, 1).is_err());
    }

    #[test]
    fn cg_orthogonality_one_and_half() {
        let (tj1, tj2) = (2u32, 1u32);
        for m1 in (-(tj1 as i32)..=tj1 as i32).step_by(2) {
            for m2 in (-(tj2 as i32)..=tj2 as i32).step_by(2) {
                for m1p in (-(tj1 as i32)..=tj1 as i32).step_by(2) {
                    for m2p in (-(tj2 as i32)..=tj2 as i32).step_by(2) {
                        let mut s = 0.0;
                        for tj in [1u32, 3] {
                            for tm in (-(tj as i32)..=tj as i32).step_by(2) {
                                s += clebsch_gordan(tj1, m1, tj2, m2, tj, tm).unwrap()
                                    * clebsch_gordan(tj1, m1p, tj2, m2p, tj, tm).unwrap();
                            }
                        }
                        let expected = if m1 == m1p && m2 == m2p { 1.0 } else { 0.0 };
                        assert!((s - expected).abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn float_matches_exact_rationals() {
        for tj1 in 0..=8u32 {
            for tj2 in 0..=8u32 {
                let lo = (tj1 as i32 - tj2 as i32).unsigned_abs();
                for tj in (lo..=tj1 + tj2).step_by(2) {
                    for m1 in (-(tj1 as i32)..=tj1 as i32).step_by(2) {
                        for m2 in (-(tj2 as i32)..=tj2 as i32).step_by(2) {
                            let tm = m1 + m2;
                            if tm.unsigned_abs() > tj {
                                continue;
                            }
                            let f = clebsch_gordan(tj1, m1, tj2, m2, tj, tm).unwrap();
                            let e = clebsch_gordan_exact(tj1, m1, tj2, m2, tj, tm).unwrap().to_f64();
                            assert!((f - e).abs() < 1e-12, "{tj1} {m1} {tj2} {m2} {tj} {tm}: {f} vs {e}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exact_values_at_larger_spin() {
        // the singlet coefficient has magnitude 1/sqrt(2j+1)
        for tj in [4u32, 10, 20] {
            let e = clebsch_gordan_exact(tj, tj as i32, tj, -(tj as i32), 0, 0).unwrap();
            assert_eq!(e.num, BigUint::one());
            assert_eq!(e.den, BigUint::from(tj + 1));
        }
    }

    #[test]
    fn identity_rotation() {
        let d = wigner_d(&WignerRotation::new(0.0, 0.0, 0.0, 1));
        assert!(d.max_abs_diff(&CMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn spin_half_closed_form() {
        let (a, b, g) = (0.3, 1.1, -0.7);
        let d = wigner_d(&WignerRotation::new(a, b, g, 1));
        let (s, c) = (0.5 * b).sin_cos();
        let e = |x: f64| C64::new(x.cos(), x.sin());
        let expected = CMatrix::from_rows(
            2,
            alloc::vec![
                e(-0.5 * (a + g)) * c,
                e(-0.5 * (a - g)) * (-s),
                e(0.5 * (a - g)) * s,
                e(0.5 * (a + g)) * c,
            ],
        )
        .unwrap();
        assert!(d.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn small_d_matches_factorial_formula() {
        for two_j in 0..=12i64 {
            for &beta in &[0.0, 0.4, 1.3, 2.9] {
                let d = small_d(two_j as u32, beta);
                for k in 0..=two_j {
                    for l in 0..=two_j {
                        let f = small_d_factorial(two_j, two_j - 2 * k, two_j - 2 * l, beta);
                        assert!((d[k as usize][l as usize] - f).abs() < 1e-12, "2j={two_j} k={k} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn highest_weight_overlap() {
        for two_j in [1u32, 4, 9, 40, 120] {
            for &beta in &[0.2, 1.0, 2.5] {
                let d = small_d(two_j, beta);
                let expected = (0.5 * beta).cos().powi(2 * two_j as i32);
                assert!((d[0][0] * d[0][0] - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rotations_compose_and_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for two_j in [0u32, 1, 2, 7, 20, 40] {
            let (a, b, g) = (
                rng.gen_range(-3.0..3.0),
                rng.gen_range(0.0..3.1),
                rng.gen_range(-3.0..3.0),
            );
            let d = wigner_d(&WignerRotation::new(a, b, g, two_j));
            let dd = d.matmul(&d.adjoint());
            assert!(dd.max_abs_diff(&CMatrix::identity(two_j as usize + 1)) < 1e-10);
            let b2 = rng.gen_range(0.0..1.5);
            let d1 = wigner_d(&WignerRotation::new(0.0, b, 0.0, two_j));
            let d2 = wigner_d(&WignerRotation::new(0.0, b2, 0.0, two_j));
            let d12 = wigner_d(&WignerRotation::new(0.0, b + b2, 0.0, two_j));
            assert!(d1.matmul(&d2).max_abs_diff(&d12) < 1e-11);
        }
    }
}
