//! Built-in sweep presets for the five reference scenarios.
//!
//! | id | axis | fixed | curves | quantities |
//! |----|------|-------|--------|------------|
//! | 1 | T | N = 2, J = Δ = 1 | B ∈ {0, 1, 2, 2.5} | M, C |
//! | 2 | T | J = −1, B = Δ = 0 | N ∈ {2, 3, 5} | M, C |
//! | 3 | B | J = −1, Δ = 0, T = 0.05 | N ∈ {2, 3, 6} | M, C |
//! | 4 | T | J = −1, B = Δ = 0 | N ∈ {2, 3} | M, C, D |
//! | 5 | λ/T | J = B = λ, Δ = 0 | N ∈ {2, 3}, λ = ±1 | M, C, D |
//!
//! Temperature grids have 200 points, log-spaced from `1e−3·max(1, |J|)` to
//! `5|J|`. The field grid is 200 points on `[0, 8]`; the λ/T grid is
//! `10·i/200` for `i = 1..=200` (λ/T = 0 would be infinite temperature).

use rayon::prelude::*;

use crate::collective::ModelParams;
use crate::error::{Error, Result};
use crate::sweep::{linear_grid, log_grid, run_sweep, Axis, Quantity, SweepRow, SweepSpec};

pub const GRID_POINTS: usize = 200;
pub const FIELD_AXIS_MAX: f64 = 8.0;
pub const LAMBDA_OVER_T_MAX: f64 = 10.0;
/// Temperature of the field-axis scenario.
pub const FIELD_SCAN_TEMPERATURE: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub spec: SweepSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: u8,
    pub title: &'static str,
    pub curves: Vec<Curve>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRows {
    pub label: String,
    pub axis: Axis,
    pub quantities: Vec<Quantity>,
    pub rows: Vec<SweepRow>,
}

/// The preset temperature grid for coupling `j`.
pub fn temperature_grid(j: f64) -> Vec<f64> {
    let scale = j.abs().max(1.0);
    log_grid(1e-3 * scale, 5.0 * scale, GRID_POINTS)
}

pub fn field_grid() -> Vec<f64> {
    linear_grid(0.0, FIELD_AXIS_MAX, GRID_POINTS)
}

pub fn lambda_over_t_grid() -> Vec<f64> {
    (1..=GRID_POINTS)
        .map(|i| LAMBDA_OVER_T_MAX * i as f64 / GRID_POINTS as f64)
        .collect()
}

fn curve(label: String, axis: Axis, grid: Vec<f64>, base: ModelParams, quantities: &[Quantity]) -> Result<Curve> {
    Ok(Curve {
        label,
        spec: SweepSpec::new(axis, grid, base, quantities.to_vec())?,
    })
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

pub fn preset(id: u8) -> Result<FigurePreset> {
    use Quantity::{C, D, M};
    let mc = [M, C];
    let mcd = [M, C, D];
    let (title, curves) = match id {
        1 => {
            let curves = [0.0, 1.0, 2.0, 2.5]
                .into_iter()
                .map(|b| {
                    let base = ModelParams::new(2, 1.0, 1.0, b, 1.0)?;
                    curve(format!("B={}", fmt_num(b)), Axis::Temperature, temperature_grid(1.0), base, &mc)
                })
                .collect::<Result<Vec<_>>>()?;
            ("two qubits, J = Δ = 1, several fields", curves)
        }
        2 => {
            let curves = [2, 3, 5]
                .into_iter()
                .map(|n| {
                    let base = ModelParams::new(n, -1.0, 0.0, 0.0, 1.0)?;
                    curve(format!("N={n}"), Axis::Temperature, temperature_grid(-1.0), base, &mc)
                })
                .collect::<Result<Vec<_>>>()?;
            ("XX model, J = −1, zero field", curves)
        }
        3 => {
            let curves = [2, 3, 6]
                .into_iter()
                .map(|n| {
                    let base = ModelParams::from_temperature(n, -1.0, 0.0, 0.0, FIELD_SCAN_TEMPERATURE)?;
                    curve(format!("N={n}"), Axis::Field, field_grid(), base, &mc)
                })
                .collect::<Result<Vec<_>>>()?;
            ("XX model, J = −1, T = 0.05, field scan", curves)
        }
        4 => {
            let curves = [2, 3]
                .into_iter()
                .map(|n| {
                    let base = ModelParams::new(n, -1.0, 0.0, 0.0, 1.0)?;
                    curve(format!("N={n}"), Axis::Temperature, temperature_grid(-1.0), base, &mcd)
                })
                .collect::<Result<Vec<_>>>()?;
            ("XX model with the disorder measure", curves)
        }
        5 => {
            let mut curves = Vec::new();
            for lambda in [1.0, -1.0] {
                for n in [2, 3] {
                    let base = ModelParams::new(n, lambda, 0.0, lambda, 1.0)?;
                    let label = format!("N={n} lambda={}", fmt_num(lambda));
                    curves.push(curve(label, Axis::LambdaOverT, lambda_over_t_grid(), base, &mcd)?);
                }
            }
            ("cavity mapping J = B = λ, Δ = 0", curves)
        }
        _ => return Err(Error::InvalidParameter(format!("figure id must be 1..=5, got {id}"))),
    };
    Ok(FigurePreset { id, title, curves })
}

/// Evaluates every curve of a preset. Curves run in parallel; the output
/// keeps preset order.
pub fn run_figure(preset: &FigurePreset) -> Result<Vec<CurveRows>> {
    preset
        .curves
        .par_iter()
        .map(|c| {
            Ok(CurveRows {
                label: c.label.clone(),
                axis: c.spec.axis(),
                quantities: c.spec.quantities().to_vec(),
                rows: run_sweep(&c.spec)?,
            })
        })
        .collect()
}
