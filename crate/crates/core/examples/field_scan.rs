// Field scan at T = 0.05 for the XX model: the concurrence survives to
// larger fields as N grows and shows level-crossing dips on the way.

use thermal_bell::figures::{preset, run_figure};
use thermal_bell::{find_threshold, Axis, ModelParams, ThresholdQuery, Witness};

pub fn run_example() -> thermal_bell::Result<()> {
    for n in [2, 3, 6] {
        let base = ModelParams::from_temperature(n, -1.0, 0.0, 0.0, 0.05)?;
        let b_c = find_threshold(&ThresholdQuery::new(Witness::C, Axis::Field, (0.0, 8.0), base))?;
        let b_m = find_threshold(&ThresholdQuery::new(Witness::M, Axis::Field, (0.0, 8.0), base))?;
        println!("N={n}: B_M {:?}  B_C {:?}", b_m, b_c);
    }
    let curves = run_figure(&preset(3)?)?;
    let six = curves.iter().find(|c| c.label == "N=6").expect("N=6 curve");
    let c: Vec<f64> = six.rows.iter().map(|r| r.report.concurrence).collect();
    for i in 1..c.len() - 1 {
        if c[i] > 1e-10 && c[i] < c[i - 1] && c[i] <= c[i + 1] {
            println!("N=6 dip near B = {:.3} (C = {:.4})", six.rows[i].axis_value, c[i]);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> thermal_bell::Result<()> {
    run_example()
}
