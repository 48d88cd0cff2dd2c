//! Cross-validation suites behind the `verify` subcommand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closed_form::symmetry_suite;
use crate::collective::{build_sector_table, expectation_sz_moments, expectation_transverse, ModelParams};
use crate::error::Result;
use crate::oracle::{build_full_hamiltonian, partial_trace_to_pair, thermal_state, MAX_ORACLE_QUBITS};
use crate::reduced::{thermal_x_state, to_density_matrix, x_state_from_expectations, DensityMatrix4};
use crate::sweep::{find_threshold, Axis, ThresholdOutcome, ThresholdQuery, Witness, MIN_TEMPERATURE};
use crate::witnesses::{
    concurrence_wootters, disorder_from_entropies, horodecki_violation, witness_report, witness_report_general,
};
use crate::{CorrelationMatrix, Error};

pub const ORACLE_TOLERANCE: f64 = 1e-10;
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
pub const DRAWS_PER_SIZE: usize = 30;
pub const SYMMETRY_DRAWS: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub worst_error: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub detail: String,
}

impl SuiteResult {
    fn from_errors(name: &'static str, worst_error: f64, tolerance: f64, cases: usize, detail: String) -> Self {
        Self {
            name,
            passed: worst_error <= tolerance,
            worst_error,
            tolerance,
            cases,
            detail,
        }
    }
}

/// Uniform draw of `(J, Δ, B, β)` with `|J|, |B| ≤ 3`, `|Δ| ≤ 2`,
/// `β ∈ [0.1, 30]`.
pub fn random_params<R: Rng>(rng: &mut R, n_qubits: usize) -> Result<ModelParams> {
    let j = rng.gen_range(-3.0..=3.0);
    let delta = rng.gen_range(-2.0..=2.0);
    let b = rng.gen_range(-3.0..=3.0);
    let beta = rng.gen_range(0.1..=30.0);
    ModelParams::new(n_qubits, j, delta, b, beta)
}

fn draws(seed: u64, n_qubits: usize, count: usize) -> Result<Vec<ModelParams>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n_qubits as u64) << 32));
    (0..count).map(|_| random_params(&mut rng, n_qubits)).collect()
}

fn max_entry_diff(a: &DensityMatrix4, b: &DensityMatrix4) -> f64 {
    (a.matrix() - b.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest deviations found for one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OracleDeviation {
    /// Reduced matrix, oracle vs collective route, over the checked pairs.
    pub matrix: f64,
    /// M, C, D from the X-state formulas vs matrix routes on the oracle state.
    pub witnesses: f64,
    /// Per-level X-state vs the moment formula.
    pub moments: f64,
}

impl OracleDeviation {
    pub fn worst(&self) -> f64 {
        self.matrix.max(self.witnesses).max(self.moments)
    }
}

/// Compares the collective route against full diagonalization at one point.
pub fn oracle_point(params: &ModelParams) -> Result<OracleDeviation> {
    let n = params.n_qubits();
    let beta = params.inverse_temperature();
    let table = build_sector_table(params)?;
    let x = thermal_x_state(&table, beta)?;
    let (sz, sz2) = expectation_sz_moments(&table, beta)?;
    let x_moments = x_state_from_expectations(n, sz, sz2, expectation_transverse(&table, beta)?)?;
    let moments = [
        x.v_plus() - x_moments.v_plus(),
        x.v_minus() - x_moments.v_minus(),
        x.w() - x_moments.w(),
        x.y() - x_moments.y(),
    ]
    .iter()
    .fold(0.0f64, |m, d| m.max(d.abs()));

    let collective = to_density_matrix(&x);
    let full = thermal_state(&build_full_hamiltonian(params)?, beta)?;
    let mut pairs = vec![(0, 1), (n - 2, n - 1)];
    if n > 3 {
        pairs.push((1, n - 1));
    }
    let mut matrix = 0.0f64;
    let mut oracle_pair = None;
    for (i, j) in pairs {
        let rho = partial_trace_to_pair(&full.rho, i, j)?;
        matrix = matrix.max(max_entry_diff(&rho, &collective));
        oracle_pair.get_or_insert(rho);
    }
    let oracle_pair = oracle_pair.expect("at least one pair");
    let closed = witness_report(&x);
    let general = witness_report_general(&oracle_pair)?;
    let witnesses = [
        closed.violation_m - general.violation_m,
        closed.concurrence - general.concurrence,
        closed.disorder_d - general.disorder_d,
    ]
    .iter()
    .fold(0.0f64, |m, d| m.max(d.abs()));
    Ok(OracleDeviation { matrix, witnesses, moments })
}

/// Oracle equivalence for `N = 2..=max_n`, `DRAWS_PER_SIZE` seeded draws
/// each.
pub fn oracle_equivalence(max_n: usize, seed: u64) -> Result<SuiteResult> {
    if !(2..=MAX_ORACLE_QUBITS).contains(&max_n) {
        return Err(Error::InvalidParameter(format!(
            "max-n must be in 2..={MAX_ORACLE_QUBITS}, got {max_n}"
        )));
    }
    let mut points = Vec::new();
    for n in 2..=max_n {
        points.extend(draws(seed, n, DRAWS_PER_SIZE)?);
    }
    let deviations = points
        .par_iter()
        .map(oracle_point)
        .collect::<Result<Vec<_>>>()?;
    let worst = deviations.iter().fold(OracleDeviation::default(), |a, d| OracleDeviation {
        matrix: a.matrix.max(d.matrix),
        witnesses: a.witnesses.max(d.witnesses),
        moments: a.moments.max(d.moments),
    });
    Ok(SuiteResult::from_errors(
        "oracle-equivalence",
        worst.worst(),
        ORACLE_TOLERANCE,
        points.len(),
        format!(
            "N=2..{max_n}: matrix {:.2e}, witnesses {:.2e}, moments {:.2e}",
            worst.matrix, worst.witnesses, worst.moments
        ),
    ))
}

/// Sign-flip identities over `SYMMETRY_DRAWS` seeded draws.
pub fn symmetry(seed: u64) -> Result<SuiteResult> {
    let params = draws(seed.wrapping_add(1), 2, SYMMETRY_DRAWS)?;
    let reports = params
        .par_iter()
        .map(|p| symmetry_suite(p.coupling(), p.anisotropy(), p.inverse_temperature(), p.field()))
        .collect::<Result<Vec<_>>>()?;
    let worst = reports.iter().map(|r| r.worst_asserted()).fold(0.0, f64::max);
    let checks: usize = reports.iter().map(|r| r.checks.iter().filter(|c| c.asserted).count()).sum();
    Ok(SuiteResult::from_errors(
        "symmetry",
        worst,
        SYMMETRY_TOLERANCE,
        checks,
        format!("{SYMMETRY_DRAWS} draws, N=2 closed forms and N=2..8 field reversal"),
    ))
}

/// Deviations of the three witness identities at one point:
/// `(M vs (chsh/2)² − 1, C vs Wootters, D vs entropies)`.
pub fn triangle_point(params: &ModelParams) -> Result<[f64; 3]> {
    let table = build_sector_table(params)?;
    let x = thermal_x_state(&table, params.inverse_temperature())?;
    let report = witness_report(&x);
    let h = horodecki_violation(&CorrelationMatrix::from_x_state(&x));
    let rho = to_density_matrix(&x);
    Ok([
        (report.violation_m - ((h.chsh_max / 2.0).powi(2) - 1.0)).abs(),
        (report.concurrence - concurrence_wootters(&rho)).abs(),
        (report.disorder_d - disorder_from_entropies(&rho)?).abs(),
    ])
}

/// The M / C / D identities at thermal points for `N = 2..=max_n`.
pub fn consistency_triangle(max_n: usize, seed: u64) -> Result<SuiteResult> {
    let mut points = Vec::new();
    for n in 2..=max_n.max(2) {
        points.extend(draws(seed.wrapping_add(2), n, DRAWS_PER_SIZE)?);
    }
    let errs = points
        .par_iter()
        .map(triangle_point)
        .collect::<Result<Vec<_>>>()?;
    let worst = errs.iter().fold([0.0f64; 3], |a, e| [a[0].max(e[0]), a[1].max(e[1]), a[2].max(e[2])]);
    // The concurrence identity is the only one held to 1e−10; the others to
    // 1e−12.
    let passed = worst[0] <= 1e-12 && worst[1] <= 1e-10 && worst[2] <= 1e-12;
    Ok(SuiteResult {
        name: "consistency-triangle",
        passed,
        worst_error: worst.iter().copied().fold(0.0, f64::max),
        tolerance: 1e-10,
        cases: points.len(),
        detail: format!("M {:.2e}, C {:.2e}, D {:.2e}", worst[0], worst[1], worst[2]),
    })
}

/// Threshold reported as a number; a witness that is never positive has
/// threshold 0 and one still positive at the top of the bracket reports the
/// bracket end.
pub fn threshold_value(outcome: ThresholdOutcome, bracket: (f64, f64)) -> f64 {
    match outcome {
        ThresholdOutcome::Crossing(x) => x,
        ThresholdOutcome::NeverPositive => 0.0,
        ThresholdOutcome::PositiveThroughout => bracket.1,
    }
}

pub const TEMPERATURE_BRACKET: (f64, f64) = (MIN_TEMPERATURE, 5.0);
pub const FIELD_BRACKET: (f64, f64) = (0.0, 8.0);

/// One threshold, with its raw outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Threshold {
    pub label: String,
    pub outcome: ThresholdOutcome,
    pub value: f64,
}

pub fn threshold(label: &str, witness: Witness, axis: Axis, base: ModelParams) -> Result<Threshold> {
    let bracket = match axis {
        Axis::Field => FIELD_BRACKET,
        _ => TEMPERATURE_BRACKET,
    };
    let outcome = find_threshold(&ThresholdQuery::new(witness, axis, bracket, base))?;
    Ok(Threshold {
        label: label.to_string(),
        outcome,
        value: threshold_value(outcome, bracket),
    })
}

/// A strict ordering `lhs < rhs` between two thresholds.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingClaim {
    pub lhs: Threshold,
    pub rhs: Threshold,
}

impl OrderingClaim {
    pub fn holds(&self) -> bool {
        self.lhs.value < self.rhs.value
    }

    pub fn margin(&self) -> f64 {
        self.rhs.value - self.lhs.value
    }

    pub fn describe(&self) -> String {
        format!(
            "{} = {:.6} < {} = {:.6}",
            self.lhs.label, self.lhs.value, self.rhs.label, self.rhs.value
        )
    }
}

fn chain(items: Vec<Threshold>) -> Vec<OrderingClaim> {
    items
        .windows(2)
        .map(|w| OrderingClaim { lhs: w[0].clone(), rhs: w[1].clone() })
        .collect()
}

/// Temperature claims for N = 2, J = Δ = 1: `T_M < T_C` for `B = 0, 1, 2`
/// and `T_M(2) < T_M(1) < T_M(0)`.
pub fn field_dependence_claims() -> Result<Vec<OrderingClaim>> {
    let mut claims = Vec::new();
    let mut t_m = Vec::new();
    for b in [0.0, 1.0, 2.0] {
        let base = ModelParams::new(2, 1.0, 1.0, b, 1.0)?;
        let m = threshold(&format!("T_M(B={b})"), Witness::M, Axis::Temperature, base)?;
        let c = threshold(&format!("T_C(B={b})"), Witness::C, Axis::Temperature, base)?;
        t_m.push(m.clone());
        claims.push(OrderingClaim { lhs: m, rhs: c });
    }
    t_m.reverse();
    claims.extend(chain(t_m));
    Ok(claims)
}

/// `T_D < T_M < T_C` for N = 2, J = −1, B = Δ = 0.
pub fn xx_ordering_claims() -> Result<Vec<OrderingClaim>> {
    let base = ModelParams::new(2, -1.0, 0.0, 0.0, 1.0)?;
    Ok(chain(vec![
        threshold("T_D", Witness::D, Axis::Temperature, base)?,
        threshold("T_M", Witness::M, Axis::Temperature, base)?,
        threshold("T_C", Witness::C, Axis::Temperature, base)?,
    ]))
}

/// `B_M < B_C` at N = 2 and `B_C(2) < B_C(3) < B_C(6)`, at T = 0.05, J = −1,
/// Δ = 0.
pub fn field_threshold_claims() -> Result<Vec<OrderingClaim>> {
    let at = |n| ModelParams::from_temperature(n, -1.0, 0.0, 0.0, 0.05);
    let mut claims = vec![OrderingClaim {
        lhs: threshold("B_M(N=2)", Witness::M, Axis::Field, at(2)?)?,
        rhs: threshold("B_C(N=2)", Witness::C, Axis::Field, at(2)?)?,
    }];
    let b_c = [2, 3, 6]
        .into_iter()
        .map(|n| threshold(&format!("B_C(N={n})"), Witness::C, Axis::Field, at(n)?))
        .collect::<Result<Vec<_>>>()?;
    claims.extend(chain(b_c));
    Ok(claims)
}

/// `T_C(2) < T_C(3) < T_C(5)` at J = −1, B = Δ = 0.
pub fn size_dependence_claims() -> Result<Vec<OrderingClaim>> {
    let t_c = [2, 3, 5]
        .into_iter()
        .map(|n| {
            let base = ModelParams::new(n, -1.0, 0.0, 0.0, 1.0)?;
            threshold(&format!("T_C(N={n})"), Witness::C, Axis::Temperature, base)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(chain(t_c))
}

pub fn all_ordering_claims() -> Result<Vec<OrderingClaim>> {
    let mut claims = field_dependence_claims()?;
    claims.extend(xx_ordering_claims()?);
    claims.extend(field_threshold_claims()?);
    claims.extend(size_dependence_claims()?);
    Ok(claims)
}

/// Every ordering claim must hold; the reported error is the smallest margin
/// when negative, 0 otherwise.
pub fn threshold_ordering() -> Result<SuiteResult> {
    let claims = all_ordering_claims()?;
    let failing: Vec<String> = claims.iter().filter(|c| !c.holds()).map(OrderingClaim::describe).collect();
    let worst = claims.iter().map(|c| (-c.margin()).max(0.0)).fold(0.0, f64::max);
    Ok(SuiteResult {
        name: "threshold-ordering",
        passed: failing.is_empty(),
        worst_error: worst,
        tolerance: 0.0,
        cases: claims.len(),
        detail: if failing.is_empty() {
            format!("{} orderings hold", claims.len())
        } else {
            format!("violated: {}", failing.join("; "))
        },
    })
}

/// All four suites, in order.
pub fn run_all(max_n: usize, seed: u64) -> Result<Vec<SuiteResult>> {
    Ok(vec![
        oracle_equivalence(max_n, seed)?,
        symmetry(seed)?,
        consistency_triangle(max_n, seed)?,
        threshold_ordering()?,
    ])
}
