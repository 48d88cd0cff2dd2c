// Atoms dispersively coupled to a cavity, `H = λ(S_x² + S_y² + S_z)` with
// `λ = g²/δ`: entangled pairs that neither violate CHSH nor the disorder
// inequality.

use thermal_bell::figures::lambda_over_t_grid;
use thermal_bell::sweep::{cavity_sweep, CavityParams};

pub fn run_example() -> thermal_bell::Result<()> {
    for (g, detuning) in [(0.5, 0.25), (0.5, -0.25)] {
        let cp = CavityParams::from_coupling(g, detuning)?;
        for n in [2, 3] {
            let rows = cavity_sweep(&cp, n, lambda_over_t_grid())?;
            let entangled = rows.iter().filter(|r| r.report.concurrence > 0.0).count();
            let max_m = rows.iter().map(|r| r.report.violation_m).fold(f64::MIN, f64::max);
            let max_d = rows.iter().map(|r| r.report.disorder_d).fold(f64::MIN, f64::max);
            println!(
                "λ = {:+} N = {n}: C > 0 at {entangled}/{} points, max M {max_m:+.4}, max D {max_d:+.4}",
                cp.lambda,
                rows.len()
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> thermal_bell::Result<()> {
    run_example()
}
