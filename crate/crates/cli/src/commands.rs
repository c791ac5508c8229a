use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rayon::prelude::*;

use schur_compress::blocksim::{block_weights, exact_protocol_error};
use schur_compress::oracle::oracle_check;
use schur_compress::planner::{
    budget_plan, circuit_resource_estimate, qubit_approx_plan, qudit_approx_plan, total_irrep_dim, zero_error_plan,
};
use schur_compress::young::{enumerate_diagrams, irrep_dim, multiplicity_dim};
use schur_compress::{BlochVector, CompressionPlan, Error, Orientation, Spectrum, YoungDiagram};

use crate::args::{DimsArgs, OracleArgs, PlanArgs, QdistArgs, SimulateArgs, SweepArgs};
use crate::output::{spin_text, Cell, Report};

/// Spectra are accepted when their sum is this close to one.
pub const SPECTRUM_TOLERANCE: f64 = 1e-9;
/// Exact errors must stay below this in zero-error mode.
pub const ZERO_ERROR_TOLERANCE: f64 = 1e-10;
/// Oracle differences must stay below this.
pub const ORACLE_TOLERANCE: f64 = 1e-8;
/// Sweeps compute exact errors only when `Σ_λ d_λ` stays below this
/// (qubit blocks are cheap diagonals; qudit blocks enumerate tableaux).
const EXACT_LIMIT_QUBIT: u64 = 1 << 21;
const EXACT_LIMIT_QUDIT: u64 = 1 << 17;

/// A failed command and the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parameter(_) => 2,
            Error::NotApplicable(_) | Error::Unsupported(_) => 3,
            Error::Resource(_) => 4,
            Error::Contract(_) | Error::OracleMismatch(_) | Error::Convergence(_) => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// A report plus whether its verdict was a pass.
pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, passed: true }
    }
}

type CmdResult = Result<Outcome, Failure>;

pub fn parse_spectrum(text: &str) -> Result<Spectrum, Failure> {
    let probs = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("invalid spectrum entry {s:?}")))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(Spectrum::normalized(probs, SPECTRUM_TOLERANCE)?)
}

fn spectrum_text(s: &Spectrum) -> String {
    s.probs()
        .iter()
        .map(|p| crate::output::fmt_float(*p))
        .collect::<Vec<_>>()
        .join(",")
}

fn orientation(spectrum: &Spectrum, theta: Option<f64>, phi: Option<f64>) -> Result<Orientation, Failure> {
    if theta.is_none() && phi.is_none() {
        return Ok(Orientation::Identity);
    }
    if spectrum.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "--theta/--phi describe a Bloch vector and need d = 2, got d = {}",
            spectrum.dim()
        ))
        .into());
    }
    Ok(Orientation::Bloch(BlochVector::new(
        theta.unwrap_or(0.0),
        phi.unwrap_or(0.0),
    )))
}

fn diagram(lambda: &YoungDiagram) -> Cell {
    Cell::Diagram(lambda.rows().to_vec())
}

fn spin(lambda: &YoungDiagram) -> Cell {
    lambda.two_j().map_or(Cell::Empty, |t| Cell::Text(spin_text(t)))
}

fn check_n(n: u32) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    Ok(())
}

pub fn dims(args: &DimsArgs) -> CmdResult {
    check_n(args.n)?;
    if args.d == 0 {
        return Err(Failure::usage("--d must be at least 1"));
    }
    let r = args.r.unwrap_or(args.d);
    let mut report = Report::new("dims");
    report.param("n", args.n);
    report.param("d", args.d);
    report.param("r", r);
    report.columns = if args.d == 2 {
        vec!["lambda", "j", "d_lambda", "m_lambda"]
    } else {
        vec!["lambda", "d_lambda", "m_lambda"]
    };
    let mut total = BigUint::from(0u32);
    for lambda in enumerate_diagrams(args.n, args.d, r)? {
        let dim = irrep_dim(&lambda, args.d)?;
        let mult = multiplicity_dim(&lambda);
        total += &dim * &mult;
        let mut row = vec![diagram(&lambda)];
        if args.d == 2 {
            row.push(spin(&lambda));
        }
        row.extend([Cell::Big(dim), Cell::Big(mult)]);
        report.rows.push(row);
    }
    let full = BigUint::from(args.d).pow(args.n);
    report.put("sum_d_lambda_m_lambda", total.clone());
    report.put("d_pow_n", full.clone());
    report.put("complete", total == full);
    Ok(report.into())
}

pub fn qdist(args: &QdistArgs) -> CmdResult {
    check_n(args.n)?;
    let spectrum = parse_spectrum(&args.spectrum)?;
    let mut report = Report::new("qdist");
    report.param("n", args.n);
    report.param("spectrum", spectrum_text(&spectrum));
    let qubit = spectrum.dim() == 2;
    report.columns = if qubit {
        vec!["lambda", "j", "q", "cumulative"]
    } else {
        vec!["lambda", "q", "cumulative"]
    };
    let mut cumulative = 0.0;
    for (lambda, q) in block_weights(&spectrum, args.n)? {
        cumulative += q;
        let mut row = vec![diagram(&lambda)];
        if qubit {
            row.push(spin(&lambda));
        }
        row.extend([Cell::Float(q), Cell::Float(cumulative)]);
        report.rows.push(row);
    }
    report.put("total", cumulative);
    Ok(report.into())
}

/// The plan requested by `--epsilon` or `--zero-error`.
fn build_plan(n: u32, spectrum: &Spectrum, epsilon: Option<f64>, zero_error: bool) -> Result<CompressionPlan, Failure> {
    check_n(n)?;
    match (epsilon, zero_error) {
        (_, true) => Ok(zero_error_plan(n, spectrum.dim(), spectrum.rank())?),
        (Some(e), false) if spectrum.dim() == 2 => Ok(qubit_approx_plan(n, spectrum.max(), e)?),
        (Some(e), false) => Ok(qudit_approx_plan(n, spectrum, e)?),
        (None, false) => Err(Failure::usage("pass either --epsilon E or --zero-error")),
    }
}

fn kind_text(plan: &CompressionPlan) -> &'static str {
    use schur_compress::planner::PlanKind;
    match plan.kind {
        PlanKind::ZeroError => "zero-error",
        PlanKind::QubitInterval => "qubit-interval",
        PlanKind::QuditBall => "qudit-ball",
        PlanKind::Budget => "budget",
    }
}

fn put_plan_summary(report: &mut Report, plan: &CompressionPlan) {
    report.put("kind", kind_text(plan));
    report.put("rank", plan.rank);
    report.put(
        "keep",
        Cell::Diagrams(plan.keep.iter().map(|l| l.rows().to_vec()).collect()),
    );
    report.put("keep_count", plan.keep.len());
    report.put("d_enc", plan.d_enc.clone());
    report.put("qubit_count", plan.qubit_count);
    report.put("hybrid_qubits", plan.hybrid_qubit_bits.0);
    report.put("hybrid_bits", plan.hybrid_qubit_bits.1);
}

pub fn plan(args: &PlanArgs) -> CmdResult {
    let spectrum = parse_spectrum(&args.spectrum)?;
    let plan = build_plan(args.n, &spectrum, args.epsilon, args.zero_error)?;
    let mut report = Report::new("plan");
    report.param("n", args.n);
    report.param("spectrum", spectrum_text(&spectrum));
    report.param("epsilon", args.epsilon);
    report.param("zero_error", args.zero_error);

    let weights: Vec<(YoungDiagram, f64)> = block_weights(&spectrum, args.n)?;
    let keep = plan.keep_set();
    let qubit = plan.d == 2;
    report.columns = if qubit {
        vec!["lambda", "j", "d_lambda", "q"]
    } else {
        vec!["lambda", "d_lambda", "q"]
    };
    for (lambda, q) in weights.iter().filter(|(l, _)| keep.contains(l)) {
        let mut row = vec![diagram(lambda)];
        if qubit {
            row.push(spin(lambda));
        }
        row.extend([Cell::Big(irrep_dim(lambda, plan.d)?), Cell::Float(*q)]);
        report.rows.push(row);
    }

    put_plan_summary(&mut report, &plan);
    report.put("bound_qubits", plan.bound_qubits);
    if let Some(n0) = plan.threshold_n {
        report.put("threshold_n", n0);
    }
    if plan.kind != schur_compress::planner::PlanKind::ZeroError && spectrum.dim() > 2 {
        report.put("degeneracy_m", spectrum.degeneracy());
    }
    for b in plan.bounds.iter().filter(|b| b.name != "bound_qubits") {
        report.put(b.name, b.value);
    }
    if let (Some(e), true) = (args.epsilon, qubit) {
        let res = circuit_resource_estimate(args.n, e)?;
        report.put("coherent_qubits", res.coherent_qubits);
        report.put("ancilla_qubits", res.ancilla_qubits);
        report.put("encoding_ops", res.encoding_ops_order.to_string());
        report.put("decoding_ops", res.decoding_ops_order.to_string());
    }
    Ok(report.into())
}

pub fn simulate(args: &SimulateArgs) -> CmdResult {
    let spectrum = parse_spectrum(&args.spectrum)?;
    let orient = orientation(&spectrum, args.theta, args.phi)?;
    let plan = build_plan(args.n, &spectrum, args.epsilon, args.zero_error)?;
    let err = exact_protocol_error(args.n, &spectrum, orient, &plan.keep_set(), None)?;

    let mut report = Report::new("simulate");
    report.param("n", args.n);
    report.param("spectrum", spectrum_text(&spectrum));
    report.param("epsilon", args.epsilon);
    report.param("zero_error", args.zero_error);
    report.param("theta", args.theta);
    report.param("phi", args.phi);
    put_plan_summary(&mut report, &plan);

    let target = args.epsilon.unwrap_or(ZERO_ERROR_TOLERANCE);
    let passed = if args.zero_error {
        err.exact_error < target
    } else {
        err.exact_error <= target
    };
    report.put("exact_error", err.exact_error);
    report.put("tail_mass", err.tail_mass);
    report.put("lower_bound", err.lower_bound);
    report.put(
        "sandwich",
        err.lower_bound <= err.exact_error + 1e-12 && err.exact_error <= err.tail_mass + 1e-12,
    );
    report.put("target", target);
    report.put("verdict", if passed { "PASS" } else { "FAIL" });
    Ok(Outcome { report, passed })
}

/// `a:b:step` or `a:b:*k`, inclusive of `b` when reached.
pub fn parse_range(text: &str) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::usage(format!("--n-range expects a:b:step or a:b:*k, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    let (a, b, step) = match parts.as_slice() {
        [a, b] => (*a, *b, "1"),
        [a, b, s] => (*a, *b, *s),
        _ => return Err(bad()),
    };
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    let mut out = Vec::new();
    if let Some(k) = step.trim().strip_prefix('*') {
        let k: u32 = k.parse().map_err(|_| bad())?;
        if k < 2 || a == 0 {
            return Err(bad());
        }
        let mut n = a as u64;
        while n <= b as u64 {
            out.push(n as u32);
            n *= k as u64;
        }
    } else {
        let s: u32 = step.trim().parse().map_err(|_| bad())?;
        if s == 0 {
            return Err(bad());
        }
        out.extend((a..=b).step_by(s as usize));
    }
    out.retain(|&n| n > 0);
    if out.is_empty() {
        return Err(Failure::usage(format!("--n-range {text:?} is empty")));
    }
    Ok(out)
}

fn parse_epsilons(text: &str) -> Result<Vec<f64>, Failure> {
    let eps = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("invalid epsilon {s:?}")))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    if eps.is_empty() {
        return Err(Failure::usage("--epsilon-list is empty"));
    }
    Ok(eps)
}

#[derive(Clone, Copy)]
enum SweepMode {
    Approx(f64),
    ZeroError,
    Budget(f64),
}

fn exact_feasible(n: u32, spectrum: &Spectrum) -> Result<bool, Failure> {
    let limit = if spectrum.dim() == 2 {
        EXACT_LIMIT_QUBIT
    } else {
        EXACT_LIMIT_QUDIT
    };
    let total = total_irrep_dim(n, spectrum.dim(), spectrum.rank())?;
    Ok(total.to_u64().is_some_and(|t| t <= limit))
}

fn sweep_row(n: u32, spectrum: &Spectrum, mode: SweepMode) -> Result<Vec<Cell>, Failure> {
    let (plan, epsilon) = match mode {
        SweepMode::Approx(e) => (build_plan(n, spectrum, Some(e), false)?, Cell::Float(e)),
        SweepMode::ZeroError => (build_plan(n, spectrum, None, true)?, Cell::Empty),
        SweepMode::Budget(x) => {
            let budget = BigUint::from((n as f64).powf(x).floor() as u64).max(BigUint::one());
            (budget_plan(n, spectrum, &budget)?, Cell::Empty)
        }
    };
    let keep: BTreeSet<YoungDiagram> = plan.keep_set();
    let (exact, tail, lower) = if exact_feasible(n, spectrum)? {
        let r = exact_protocol_error(n, spectrum, Orientation::Identity, &keep, None)?;
        (Cell::Float(r.exact_error), r.tail_mass, r.lower_bound)
    } else {
        let tail = plan.bound("tail_mass").unwrap_or(0.0);
        (Cell::Empty, tail, 0.5 * tail)
    };
    let log2n = (n as f64).log2();
    let per_log = if n > 1 {
        Cell::Float(plan.qubit_count as f64 / log2n)
    } else {
        Cell::Empty
    };
    Ok(vec![
        Cell::from(n),
        epsilon,
        Cell::Big(plan.d_enc.clone()),
        Cell::from(plan.qubit_count),
        per_log,
        Cell::from(plan.bound_qubits),
        exact,
        Cell::Float(tail),
        Cell::Float(lower),
    ])
}

pub fn sweep(args: &SweepArgs) -> CmdResult {
    let spectrum = parse_spectrum(&args.spectrum)?;
    let ns = parse_range(&args.n_range)?;
    let modes: Vec<SweepMode> = if args.zero_error {
        vec![SweepMode::ZeroError]
    } else if let Some(x) = args.budget_exponent {
        if !(x.is_finite() && x > 0.0) {
            return Err(Failure::usage("--budget-exponent must be positive"));
        }
        vec![SweepMode::Budget(x)]
    } else {
        let list = args
            .epsilon_list
            .as_deref()
            .ok_or_else(|| Failure::usage("pass --epsilon-list, --zero-error or --budget-exponent"))?;
        parse_epsilons(list)?.into_iter().map(SweepMode::Approx).collect()
    };
    let grid: Vec<(u32, SweepMode)> = ns.iter().flat_map(|&n| modes.iter().map(move |&m| (n, m))).collect();
    let rows = grid
        .par_iter()
        .map(|&(n, mode)| sweep_row(n, &spectrum, mode))
        .collect::<Result<Vec<_>, Failure>>()?;

    let mut report = Report::new("sweep");
    report.param("n_range", args.n_range.as_str());
    report.param("spectrum", spectrum_text(&spectrum));
    report.param(
        "epsilon_list",
        args.epsilon_list.clone().map_or(Cell::Empty, Cell::Text),
    );
    report.param("zero_error", args.zero_error);
    report.param("budget_exponent", args.budget_exponent);
    report.columns = vec![
        "n",
        "epsilon",
        "d_enc",
        "qubit_count",
        "qubits_per_log2n",
        "bound_qubits",
        "exact_error",
        "tail_mass",
        "lower_bound",
    ];
    report.rows = rows;
    Ok(report.into())
}

pub fn oracle(args: &OracleArgs) -> CmdResult {
    check_n(args.n)?;
    let spectrum = parse_spectrum(&args.spectrum)?;
    let orient = orientation(&spectrum, args.theta, args.phi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let result = oracle_check(args.n, &spectrum, orient, &mut rng)?;

    let mut report = Report::new("oracle-check");
    report.param("n", args.n);
    report.param("spectrum", spectrum_text(&spectrum));
    report.param("theta", args.theta);
    report.param("phi", args.phi);
    report.param("seed", args.seed);
    report.columns = vec!["comparison", "max_diff", "status"];
    for c in &result.comparisons {
        let ok = c.max_diff < ORACLE_TOLERANCE;
        report.rows.push(vec![
            Cell::Text(c.name.clone()),
            Cell::Float(c.max_diff),
            Cell::from(status(ok)),
        ]);
    }
    let passed = result.passed(ORACLE_TOLERANCE);
    report.put("max_diff", result.max_diff());
    report.put("tolerance", ORACLE_TOLERANCE);
    report.put("verdict", status(passed));
    Ok(Outcome { report, passed })
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2:10:4").unwrap(), [2, 6, 10]);
        assert_eq!(parse_range("2:16:*2").unwrap(), [2, 4, 8, 16]);
        assert_eq!(parse_range("3:5").unwrap(), [3, 4, 5]);
        for bad in ["5:4:1", "1:5:0", "1:5:*1", "a:b", "1:2:3:4", "0:0:1"] {
            assert_eq!(parse_range(bad).unwrap_err().code, 2, "{bad}");
        }
    }

    #[test]
    fn spectrum_sum_is_checked() {
        assert_eq!(parse_spectrum("0.6,0.4").unwrap().probs(), [0.6, 0.4]);
        assert!(parse_spectrum("0.6,0.4000000001").is_ok());
        assert_eq!(parse_spectrum("0.6,0.5").unwrap_err().code, 2);
        assert_eq!(parse_spectrum("0.6,x").unwrap_err().code, 2);
    }

    #[test]
    fn error_codes() {
        assert_eq!(Failure::from(Error::NotApplicable("x".into())).code, 3);
        assert_eq!(Failure::from(Error::Unsupported("x".into())).code, 3);
        assert_eq!(Failure::from(Error::Resource("x".into())).code, 4);
        assert_eq!(Failure::from(Error::OracleMismatch("x".into())).code, 1);
    }
}
