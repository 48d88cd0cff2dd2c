// Measurement directions that reach the maximal CHSH value of a thermal
// pair state.

use thermal_bell::reduced::{thermal_x_state, to_density_matrix};
use thermal_bell::witnesses::{horodecki_violation, optimal_settings};
use thermal_bell::{build_sector_table, CorrelationMatrix, ModelParams};

pub fn run_example() -> thermal_bell::Result<()> {
    for t in [0.2, 0.6, 1.0] {
        let params = ModelParams::from_temperature(2, -1.0, 0.0, 0.0, t)?;
        let x = thermal_x_state(&build_sector_table(&params)?, params.inverse_temperature())?;
        let corr = CorrelationMatrix::from_x_state(&x);
        let s = optimal_settings(&corr)?;
        let value = s.expectation(&to_density_matrix(&x));
        println!("T = {t}: <B> = {value:.6}, 2√(u+ũ) = {:.6}", horodecki_violation(&corr).chsh_max);
        println!("  a  {:?}\n  a' {:?}\n  b  {:?}\n  b' {:?}", s.a, s.a_prime, s.b, s.b_prime);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> thermal_bell::Result<()> {
    run_example()
}
