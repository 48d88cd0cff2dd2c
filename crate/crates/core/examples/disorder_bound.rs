// The disorder measure D against the entanglement of formation it bounds,
// along the XX-model temperature axis.

use thermal_bell::figures::temperature_grid;
use thermal_bell::sweep::{run_sweep, Quantity};
use thermal_bell::{Axis, ModelParams, SweepSpec};

pub fn run_example() -> thermal_bell::Result<()> {
    for n in [2, 3] {
        let base = ModelParams::new(n, -1.0, 0.0, 0.0, 1.0)?;
        let spec = SweepSpec::new(Axis::Temperature, temperature_grid(-1.0), base, Quantity::all())?;
        let rows = run_sweep(&spec)?;
        let slack = rows.iter().map(|r| r.report.eof_lower - r.report.disorder_d).fold(f64::MAX, f64::min);
        let last_d = rows.iter().rev().find(|r| r.report.disorder_d > 0.0).map(|r| r.axis_value);
        println!("N={n}: min(E_f − D) = {slack:.3e}, D > 0 up to T ≈ {last_d:?}");
        for r in rows.iter().step_by(40) {
            println!(
                "  T {:>8.4}  M {:+.4}  C {:.4}  D {:+.4}  E_f {:.4}",
                r.axis_value, r.report.violation_m, r.report.concurrence, r.report.disorder_d, r.report.eof_lower
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> thermal_bell::Result<()> {
    run_example()
}
