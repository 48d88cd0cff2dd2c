// Full 2^N diagonalization against the collective-spin route for one
// parameter point.

use thermal_bell::build_sector_table;
use thermal_bell::oracle::{build_full_hamiltonian, partial_trace_to_pair, thermal_state};
use thermal_bell::reduced::{thermal_x_state, to_density_matrix};
use thermal_bell::ModelParams;

pub fn run_example() -> thermal_bell::Result<()> {
    let params = ModelParams::from_temperature(6, -0.8, 0.4, 0.3, 0.6)?;
    let beta = params.inverse_temperature();
    let h = build_full_hamiltonian(&params)?;
    println!("dim {}, S_z leakage {:e}", h.dim(), h.magnetization_leakage());

    let full = thermal_state(&h, beta)?;
    let x = thermal_x_state(&build_sector_table(&params)?, beta)?;
    let collective = to_density_matrix(&x);
    for (i, j) in [(0, 1), (2, 5), (3, 4)] {
        let rho = partial_trace_to_pair(&full.rho, i, j)?;
        let diff = (rho.matrix() - collective.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        println!("pair ({i},{j}): max |Δρ| = {diff:.2e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> thermal_bell::Result<()> {
    run_example()
}
