// XX model (J = −1, Δ = B = 0): larger N keeps pairwise entanglement to
// higher temperature but never violates CHSH beyond two qubits.

use thermal_bell::{find_threshold, Axis, ModelParams, ThresholdQuery, Witness};
use thermal_bell::figures::{preset, run_figure};

pub fn run_example() -> thermal_bell::Result<()> {
    let curves = run_figure(&preset(2)?)?;
    for c in &curves {
        let max_m = c.rows.iter().map(|r| r.report.violation_m).fold(f64::MIN, f64::max);
        let max_c = c.rows.iter().map(|r| r.report.concurrence).fold(0.0, f64::max);
        let base = ModelParams::new(c.rows[0].params.n_qubits(), -1.0, 0.0, 0.0, 1.0)?;
        let t_c = find_threshold(&ThresholdQuery::new(Witness::C, Axis::Temperature, (0.01, 5.0), base))?;
        println!("{:<4} max M {max_m:+.4}  max C {max_c:.4}  T_C {:?}", c.label, t_c.value());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> thermal_bell::Result<()> {
    run_example()
}
