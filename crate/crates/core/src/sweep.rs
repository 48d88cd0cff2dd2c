//! One-dimensional parameter sweeps and threshold location.

use rayon::prelude::*;

use crate::collective::{build_sector_table, ModelParams};
use crate::error::{Error, Result};
use crate::reduced::thermal_x_state;
use crate::witnesses::{witness_report, WitnessReport};

/// Lowest temperature allowed on any grid or bracket.
pub const MIN_TEMPERATURE: f64 = 1e-3;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Number of points scanned for a sign change before bisecting.
pub const PRE_GRID_POINTS: usize = 64;
/// A witness counts as positive only above this value.
///
/// Matches the oracle cross-validation tolerance: smaller values cannot be
/// certified by the independent route. Exact zero crossings move by far less
/// than the bisection tolerance; exponentially decaying tails (the
/// concurrence on the field axis at Δ = 0) get a finite threshold instead of
/// none.
pub const DEFAULT_POSITIVITY_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Temperature,
    Field,
    /// `λ/T` for the cavity mapping `J = B = λ`, `Δ = 0`. The swept value is
    /// `|λ|/T`, so grids are positive for either sign of λ.
    LambdaOverT,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::Temperature => "temperature",
            Axis::Field => "field",
            Axis::LambdaOverT => "lambda_over_t",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    M,
    C,
    D,
    ChshMax,
}

impl Quantity {
    pub fn of(&self, r: &WitnessReport) -> f64 {
        match self {
            Quantity::M => r.violation_m,
            Quantity::C => r.concurrence,
            Quantity::D => r.disorder_d,
            Quantity::ChshMax => r.chsh_max,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Quantity::M => "M",
            Quantity::C => "C",
            Quantity::D => "D",
            Quantity::ChshMax => "chsh_max",
        }
    }

    pub fn all() -> Vec<Quantity> {
        vec![Quantity::M, Quantity::C, Quantity::D, Quantity::ChshMax]
    }
}

/// Model parameters at one axis value. `base` supplies everything that is
/// not swept.
pub fn point_params(axis: Axis, base: &ModelParams, value: f64) -> Result<ModelParams> {
    match axis {
        Axis::Temperature => {
            if value < MIN_TEMPERATURE {
                return Err(Error::InvalidParameter(format!(
                    "temperature {value} is below the minimum {MIN_TEMPERATURE}"
                )));
            }
            base.with_temperature(value)
        }
        Axis::Field => base.with_field(value),
        Axis::LambdaOverT => {
            let lambda = base.coupling();
            if lambda == 0.0 {
                return Err(Error::DegenerateModel("cavity coupling λ = g²/δ vanishes".into()));
            }
            ModelParams::new(base.n_qubits(), lambda, 0.0, lambda, value / lambda.abs())
        }
    }
}

/// collective model → reduced X-state → witnesses.
pub fn evaluate_point(params: &ModelParams) -> Result<WitnessReport> {
    let table = build_sector_table(params)?;
    let x = thermal_x_state(&table, params.inverse_temperature())?;
    Ok(witness_report(&x))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    axis: Axis,
    grid: Vec<f64>,
    base: ModelParams,
    quantities: Vec<Quantity>,
}

impl SweepSpec {
    pub fn new(axis: Axis, grid: Vec<f64>, base: ModelParams, quantities: Vec<Quantity>) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::InvalidParameter("sweep grid is empty".into()));
        }
        if grid.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("sweep grid contains non-finite values".into()));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("sweep grid must be strictly increasing".into()));
        }
        match axis {
            Axis::Temperature if grid[0] < MIN_TEMPERATURE => {
                return Err(Error::InvalidParameter(format!(
                    "temperatures must be at least {MIN_TEMPERATURE}"
                )))
            }
            Axis::LambdaOverT if grid[0] <= 0.0 => {
                return Err(Error::InvalidParameter("λ/T grid must be positive".into()))
            }
            Axis::LambdaOverT if base.coupling() == 0.0 => {
                return Err(Error::DegenerateModel("cavity coupling λ = g²/δ vanishes".into()))
            }
            _ => {}
        }
        if quantities.is_empty() {
            return Err(Error::InvalidParameter("no quantities requested".into()));
        }
        Ok(Self { axis, grid, base, quantities })
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn base(&self) -> &ModelParams {
        &self.base
    }

    pub fn quantities(&self) -> &[Quantity] {
        &self.quantities
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub params: ModelParams,
    pub report: WitnessReport,
}

/// Evaluates every grid point, in parallel, returning rows in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.grid
        .par_iter()
        .map(|&x| {
            let params = point_params(spec.axis, &spec.base, x)?;
            Ok(SweepRow {
                axis_value: x,
                params,
                report: evaluate_point(&params)?,
            })
        })
        .collect()
}

/// `n` points evenly spaced on `[from, to]`.
pub fn linear_grid(from: f64, to: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..n).map(|i| from + (to - from) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` points evenly spaced in `ln x` on `[from, to]`.
pub fn log_grid(from: f64, to: f64, n: usize) -> Vec<f64> {
    let (a, b) = (from.ln(), to.ln());
    let mut g: Vec<f64> = linear_grid(a, b, n).into_iter().map(f64::exp).collect();
    // exp(ln x) can round outside the requested range.
    if let Some(last) = g.last_mut() {
        *last = to;
    }
    if let Some(first) = g.first_mut() {
        *first = from;
    }
    g
}

/// Witnesses a threshold can be asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    M,
    C,
    D,
}

impl Witness {
    pub fn quantity(&self) -> Quantity {
        match self {
            Witness::M => Quantity::M,
            Witness::C => Quantity::C,
            Witness::D => Quantity::D,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdQuery {
    pub witness: Witness,
    pub axis: Axis,
    pub bracket: (f64, f64),
    pub base: ModelParams,
    pub tolerance: f64,
    pub floor: f64,
}

impl ThresholdQuery {
    pub fn new(witness: Witness, axis: Axis, bracket: (f64, f64), base: ModelParams) -> Self {
        Self {
            witness,
            axis,
            bracket,
            base,
            tolerance: DEFAULT_TOLERANCE,
            floor: DEFAULT_POSITIVITY_FLOOR,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = floor;
        self
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.bracket;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParameter(format!("bracket ({lo}, {hi}) must satisfy lo < hi")));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if !(self.floor.is_finite() && self.floor >= 0.0) {
            return Err(Error::InvalidParameter(format!("floor must be non-negative, got {}", self.floor)));
        }
        match self.axis {
            Axis::Temperature if lo < MIN_TEMPERATURE => Err(Error::InvalidParameter(format!(
                "temperature bracket must start at or above {MIN_TEMPERATURE}"
            ))),
            Axis::LambdaOverT if lo <= 0.0 => Err(Error::InvalidParameter("λ/T bracket must be positive".into())),
            _ => Ok(()),
        }
    }

    fn value_at(&self, x: f64) -> Result<f64> {
        let params = point_params(self.axis, &self.base, x)?;
        Ok(self.witness.quantity().of(&evaluate_point(&params)?))
    }
}

/// Result of a threshold search. The absence of a crossing is data, not an
/// error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdOutcome {
    /// Largest axis value where the witness is still positive.
    Crossing(f64),
    /// The witness is never positive on the bracket.
    NeverPositive,
    /// The witness is still positive at the top of the bracket.
    PositiveThroughout,
}

impl ThresholdOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            ThresholdOutcome::Crossing(x) => Some(*x),
            _ => None,
        }
    }
}

/// Locates the last positive → non-positive change of a witness.
///
/// A 64-point pre-grid finds the last cell whose left end is positive and
/// whose right end is not; bisection then narrows that cell below the
/// tolerance.
pub fn find_threshold(query: &ThresholdQuery) -> Result<ThresholdOutcome> {
    query.validate()?;
    let (lo, hi) = query.bracket;
    let grid = linear_grid(lo, hi, PRE_GRID_POINTS);
    let values = grid
        .par_iter()
        .map(|&x| query.value_at(x))
        .collect::<Result<Vec<f64>>>()?;
    let positive = |v: f64| v > query.floor;

    let Some(last) = values.iter().rposition(|&v| positive(v)) else {
        return Ok(ThresholdOutcome::NeverPositive);
    };
    if last == values.len() - 1 {
        return Ok(ThresholdOutcome::PositiveThroughout);
    }
    let (mut a, mut b) = (grid[last], grid[last + 1]);
    for _ in 0..200 {
        if b - a < query.tolerance {
            break;
        }
        let mid = 0.5 * (a + b);
        if positive(query.value_at(mid)?) {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(ThresholdOutcome::Crossing(0.5 * (a + b)))
}

/// Cavity-QED parameters for `H = λ(S_x² + S_y² + S_z)`, `λ = g²/δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    pub coupling_g: Option<f64>,
    pub detuning_delta: Option<f64>,
    pub lambda: f64,
}

impl CavityParams {
    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda == 0.0 {
            return Err(Error::DegenerateModel(format!("λ must be finite and non-zero, got {lambda}")));
        }
        Ok(Self { coupling_g: None, detuning_delta: None, lambda })
    }

    pub fn from_coupling(g: f64, detuning: f64) -> Result<Self> {
        if detuning == 0.0 || !detuning.is_finite() {
            return Err(Error::InvalidParameter(format!("detuning must be finite and non-zero, got {detuning}")));
        }
        let mut p = Self::from_lambda(g * g / detuning)?;
        p.coupling_g = Some(g);
        p.detuning_delta = Some(detuning);
        Ok(p)
    }

    /// `J = B = λ`, `Δ = 0` at inverse temperature `β`.
    pub fn model_params(&self, n_qubits: usize, beta: f64) -> Result<ModelParams> {
        ModelParams::new(n_qubits, self.lambda, 0.0, self.lambda, beta)
    }
}

/// Sweeps `|λ|/T` for the cavity model.
pub fn cavity_sweep(cp: &CavityParams, n_qubits: usize, grid: Vec<f64>) -> Result<Vec<SweepRow>> {
    let base = cp.model_params(n_qubits, 1.0)?;
    let spec = SweepSpec::new(Axis::LambdaOverT, grid, base, Quantity::all())?;
    run_sweep(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(n: usize, j: f64, delta: f64, b: f64) -> ModelParams {
        ModelParams::new(n, j, delta, b, 1.0).unwrap()
    }

    #[test]
    fn low_temperature_two_qubits_violate() {
        let r = evaluate_point(&ModelParams::from_temperature(2, 1.0, 1.0, 0.0, 0.5).unwrap()).unwrap();
        assert!(r.violation_m > 0.0 && r.concurrence > 0.0);
    }

    #[test]
    fn three_qubits_entangled_without_violation() {
        let r = evaluate_point(&ModelParams::from_temperature(3, -1.0, 0.0, 0.0, 0.5).unwrap()).unwrap();
        assert!(r.violation_m < 0.0 && r.concurrence > 0.0);
    }

    #[test]
    fn hot_state_is_maximally_mixed() {
        let r = evaluate_point(&ModelParams::from_temperature(2, 1.0, 1.0, 0.0, 100.0).unwrap()).unwrap();
        assert!((r.violation_m + 1.0).abs() < 1e-3);
        assert_eq!(r.concurrence, 0.0);
        assert!((r.disorder_d + 1.0).abs() < 1e-3);
    }

    #[test]
    fn grid_validation() {
        let b = base(2, 1.0, 1.0, 0.0);
        assert!(SweepSpec::new(Axis::Temperature, vec![], b, Quantity::all()).is_err());
        assert!(SweepSpec::new(Axis::Temperature, vec![1.0, 1.0], b, Quantity::all()).is_err());
        assert!(SweepSpec::new(Axis::Temperature, vec![1e-4, 1.0], b, Quantity::all()).is_err());
        assert!(SweepSpec::new(Axis::Field, vec![-1.0, 1.0], b, Quantity::all()).is_ok());
        assert!(SweepSpec::new(Axis::Field, vec![1.0], b, vec![]).is_err());
    }

    #[test]
    fn single_point_sweep_equals_point() {
        let b = base(4, -1.0, 0.3, 0.2);
        let spec = SweepSpec::new(Axis::Temperature, vec![0.7], b, Quantity::all()).unwrap();
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        let direct = evaluate_point(&b.with_temperature(0.7).unwrap()).unwrap();
        assert_eq!(rows[0].report, direct);
    }

    #[test]
    fn sweep_is_order_independent() {
        let b = base(5, -1.0, 0.0, 0.0);
        let grid = log_grid(0.01, 3.0, 50);
        let rows = run_sweep(&SweepSpec::new(Axis::Temperature, grid.clone(), b, Quantity::all()).unwrap()).unwrap();
        for (row, &t) in rows.iter().zip(&grid).rev() {
            assert_eq!(row.axis_value, t);
            assert_eq!(row.report, evaluate_point(&b.with_temperature(t).unwrap()).unwrap());
        }
    }

    #[test]
    fn grids() {
        assert_eq!(linear_grid(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
        assert_eq!(linear_grid(2.0, 5.0, 1), vec![2.0]);
        let g = log_grid(1e-3, 5.0, 200);
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[199], 5.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn concurrence_threshold_is_2_over_ln3() {
        let q = ThresholdQuery::new(Witness::C, Axis::Temperature, (0.5, 3.0), base(2, 1.0, 1.0, 0.0));
        let t = find_threshold(&q).unwrap().value().unwrap();
        assert!((t - 2.0 / 3f64.ln()).abs() < 1e-5, "{t}");
    }

    #[test]
    fn three_qubits_never_violate() {
        let q = ThresholdQuery::new(Witness::M, Axis::Temperature, (0.01, 5.0), base(3, -1.0, 0.0, 0.0));
        assert_eq!(find_threshold(&q).unwrap(), ThresholdOutcome::NeverPositive);
    }

    #[test]
    fn positive_at_top_of_bracket() {
        let q = ThresholdQuery::new(Witness::C, Axis::Temperature, (0.01, 0.5), base(2, 1.0, 1.0, 0.0));
        assert_eq!(find_threshold(&q).unwrap(), ThresholdOutcome::PositiveThroughout);
    }

    #[test]
    fn bad_brackets() {
        let b = base(2, 1.0, 1.0, 0.0);
        assert!(find_threshold(&ThresholdQuery::new(Witness::C, Axis::Temperature, (2.0, 1.0), b)).is_err());
        assert!(find_threshold(&ThresholdQuery::new(Witness::C, Axis::Temperature, (0.0, 1.0), b)).is_err());
        assert!(find_threshold(&ThresholdQuery::new(Witness::C, Axis::Field, (0.0, 1.0), b).with_tolerance(0.0)).is_err());
    }

    #[test]
    fn cavity_mapping() {
        assert!(CavityParams::from_lambda(0.0).is_err());
        assert!(CavityParams::from_coupling(1.0, 0.0).is_err());
        let cp = CavityParams::from_coupling(2.0, -4.0).unwrap();
        assert_eq!(cp.lambda, -1.0);
        let p = point_params(Axis::LambdaOverT, &cp.model_params(3, 1.0).unwrap(), 2.0).unwrap();
        assert_eq!((p.coupling(), p.field(), p.anisotropy(), p.inverse_temperature()), (-1.0, -1.0, 0.0, 2.0));
    }

    #[test]
    fn cavity_hot_limit() {
        let cp = CavityParams::from_lambda(1.0).unwrap();
        let rows = cavity_sweep(&cp, 2, vec![1e-6]).unwrap();
        assert!((rows[0].report.violation_m + 1.0).abs() < 1e-5);
        assert_eq!(rows[0].report.concurrence, 0.0);
    }

    #[test]
    fn cavity_sign_of_lambda_matters() {
        let plus = cavity_sweep(&CavityParams::from_lambda(1.0).unwrap(), 3, vec![3.0]).unwrap();
        let minus = cavity_sweep(&CavityParams::from_lambda(-1.0).unwrap(), 3, vec![3.0]).unwrap();
        assert!((plus[0].report.concurrence - minus[0].report.concurrence).abs() > 1e-3);
    }
}
