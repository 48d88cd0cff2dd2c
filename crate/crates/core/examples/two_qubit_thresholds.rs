// Threshold temperatures of two Heisenberg-coupled qubits (J = Δ = 1) in a
// field. The concurrence threshold does not move with B; the violation
// threshold drops and disappears.

use thermal_bell::closed_form::{c_closed, m_closed};
use thermal_bell::{find_threshold, Axis, ModelParams, ThresholdOutcome, ThresholdQuery, Witness};

pub fn run_example() -> thermal_bell::Result<()> {
    println!("{:>5} {:>10} {:>10}", "B", "T_M", "T_C");
    for b in [0.0, 1.0, 2.0, 2.5] {
        let base = ModelParams::new(2, 1.0, 1.0, b, 1.0)?;
        let t = |w| -> thermal_bell::Result<String> {
            let q = ThresholdQuery::new(w, Axis::Temperature, (0.01, 5.0), base);
            Ok(match find_threshold(&q)? {
                ThresholdOutcome::Crossing(x) => format!("{x:.6}"),
                _ => "none".into(),
            })
        };
        println!("{b:>5} {:>10} {:>10}", t(Witness::M)?, t(Witness::C)?);
    }
    println!("2/ln 3 = {:.6}", 2.0 / 3f64.ln());

    // the closed forms at one point
    let beta = 1.0 / 0.5;
    println!("T = 0.5, B = 0: M = {:.6}, C = {:.6}", m_closed(1.0, 1.0, beta, 0.0)?, c_closed(1.0, 1.0, beta, 0.0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> thermal_bell::Result<()> {
    run_example()
}
